import { fetchExperts } from './api';
import { resolveConfig, type GadgetConfig } from './config';
import { renderTab, TAB_ID } from './render';
import { extractTitle } from './title';

/** The slice of the page environment the gadget touches; the entry point
 * fills it from window, tests from a synthetic DOM. */
export interface PageContext {
    document: Document;
    location: { pathname: string };
    localStorage?: Pick<Storage, 'getItem'> | null;
    /** MediaWiki config accessor when running inside a wiki. */
    mw?: { config?: { get(name: string): unknown } };
}

function mwString(ctx: PageContext, name: string): string | null {
    const value = ctx.mw?.config?.get?.(name);
    return typeof value === 'string' ? value : null;
}

/**
 * Run the gadget once for the current page: detect the article title,
 * ask the service for expert hits, and inject the tab when there are any.
 * Never throws and never touches the article content.
 */
export async function activate(
    ctx: PageContext,
    fetchFn: typeof fetch = globalThis.fetch,
    overrides?: Partial<GadgetConfig>,
): Promise<HTMLElement | null> {
    try {
        if (ctx.document.getElementById(TAB_ID)) {
            return ctx.document.getElementById(TAB_ID);
        }
        const namespace = ctx.mw?.config?.get?.('wgNamespaceNumber');
        if (typeof namespace === 'number' && namespace !== 0) return null;
        const title = extractTitle(ctx.location.pathname, mwString(ctx, 'wgPageName'));
        if (!title) return null;
        const cfg = resolveConfig(ctx.localStorage, overrides);
        const hits = await fetchExperts(cfg, title, fetchFn);
        if (!hits || hits.length === 0) return null; // absence of experts: no tab
        return renderTab(ctx.document, hits, cfg);
    } catch (error) {
        console.warn('expertpivot: gadget disabled by error:', error);
        return null;
    }
}
