/** Gadget configuration. */
export interface GadgetConfig {
    /** Absolute base URL of the expertpivot service. */
    endpoint: string;
    /** Text of the injected tab. */
    tabLabel: string;
    /**
     * URL prefix for concept links; the concept IRI is appended encoded.
     * Empty means link straight to the concept IRI (ACM CCS IRIs resolve
     * to the taxonomy's own concept pages).
     */
    conceptLinkBase: string;
}

export const DEFAULT_CONFIG: GadgetConfig = {
    endpoint: 'http://127.0.0.1:8000',
    tabLabel: 'Experts',
    conceptLinkBase: '',
};

/** localStorage key that overrides the endpoint per deployment. */
export const ENDPOINT_STORAGE_KEY = 'expertpivot.endpoint';

export function isAbsoluteHttpUrl(url: string): boolean {
    return /^https?:\/\/\S+$/i.test(url);
}

/** Merge defaults with an optional localStorage endpoint override. */
export function resolveConfig(
    storage?: Pick<Storage, 'getItem'> | null,
    overrides?: Partial<GadgetConfig>,
): GadgetConfig {
    const cfg = { ...DEFAULT_CONFIG, ...overrides };
    const stored = storage?.getItem(ENDPOINT_STORAGE_KEY);
    if (stored && isAbsoluteHttpUrl(stored)) {
        cfg.endpoint = stored;
    }
    if (!isAbsoluteHttpUrl(cfg.endpoint)) {
        throw new Error(`endpoint must be an absolute URL: ${cfg.endpoint}`);
    }
    return cfg;
}
