import { defineConfig } from 'vitest/config';

export default defineConfig({
    test: {
        environment: 'node', // DOM comes from happy-dom windows built per test
        include: ['tests/**/*.test.ts'],
    },
});
