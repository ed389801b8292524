/** Bundle entry: wire the real page environment and run once. */
import { activate, type PageContext } from './main';

function safeLocalStorage(): Pick<Storage, 'getItem'> | null {
    try {
        return window.localStorage;
    } catch {
        return null; // storage can be blocked; the default endpoint applies
    }
}

const ctx: PageContext = {
    document,
    location: window.location,
    localStorage: safeLocalStorage(),
    mw: (window as unknown as { mw?: PageContext['mw'] }).mw,
};

void activate(ctx);
