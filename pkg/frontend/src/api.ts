import type { GadgetConfig } from './config';

export interface TeamLink {
    team: string;
    doc_url: string;
}

export interface ExpertHit {
    concept: string;
    label: string;
    teams: TeamLink[];
}

function asHits(payload: unknown): ExpertHit[] | null {
    if (typeof payload !== 'object' || payload === null) return null;
    const hits = (payload as { hits?: unknown }).hits;
    if (!Array.isArray(hits)) return null;
    for (const hit of hits) {
        if (typeof hit?.concept !== 'string' || typeof hit?.label !== 'string'
            || !Array.isArray(hit?.teams)) {
            return null;
        }
    }
    return hits as ExpertHit[];
}

/**
 * Fetch expert hits for a page title. Every failure mode (network, HTTP
 * status, unexpected body) logs a console warning and resolves to null;
 * the gadget must never break the host page.
 */
export async function fetchExperts(
    cfg: GadgetConfig,
    title: string,
    fetchFn: typeof fetch = globalThis.fetch,
): Promise<ExpertHit[] | null> {
    const url = `${cfg.endpoint.replace(/\/$/, '')}/experts?title=${encodeURIComponent(title)}`;
    try {
        const response = await fetchFn(url, { credentials: 'omit' });
        if (!response.ok) {
            console.warn(`expertpivot: service answered ${response.status} for ${url}`);
            return null;
        }
        const hits = asHits(await response.json());
        if (hits === null) {
            console.warn('expertpivot: unexpected response shape from', url);
        }
        return hits;
    } catch (error) {
        console.warn('expertpivot: request failed:', error);
        return null;
    }
}
