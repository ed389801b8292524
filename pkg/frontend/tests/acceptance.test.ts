/**
 * Acceptance: the full gadget flow against a local fixture service.
 * One tab, a working toggle, links that mirror the service response, and
 * an article subtree that never changes.
 */

import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { resolveConfig, ENDPOINT_STORAGE_KEY } from '../src/config';
import { activate, type PageContext } from '../src/main';
import { BOX_ID, TAB_ID } from '../src/render';
import { KRIGING_HITS, startFixtureService, type FixtureService } from './fixture_service';
import { articleHtml, makePage } from './page';

let service: FixtureService;

beforeAll(async () => {
    service = await startFixtureService();
});

afterAll(async () => {
    await service.close();
});

function pageContext(url?: string): { ctx: PageContext; doc: Document } {
    const { win, doc } = makePage(url);
    const ctx: PageContext = {
        document: doc,
        location: { pathname: (win.location as unknown as Location).pathname },
        localStorage: { getItem: (key) => (key === ENDPOINT_STORAGE_KEY ? service.endpoint : null) },
    };
    return { ctx, doc };
}

describe('gadget against the fixture service', () => {
    it('injects exactly one working tab and never alters the article', async () => {
        const { ctx, doc } = pageContext();
        const before = articleHtml(doc);

        await activate(ctx, fetch);
        await activate(ctx, fetch); // re-run: guard must keep a single tab

        expect(doc.querySelectorAll(`#${TAB_ID}`).length).toBe(1);
        const box = doc.getElementById(BOX_ID)!;
        expect(box.style.display).toBe('none');

        const anchor = doc.querySelector(`#${TAB_ID} a`) as HTMLElement;
        anchor.click();
        expect(box.style.display).not.toBe('none');

        const concepts = [...box.querySelectorAll('a.expertpivot-concept')];
        expect(concepts.map((a) => a.textContent)).toEqual(
            KRIGING_HITS.map((hit) => hit.label),
        );
        const teams = [...box.querySelectorAll('a.expertpivot-team')];
        expect(teams.map((a) => [a.textContent, a.getAttribute('href')])).toEqual(
            KRIGING_HITS.flatMap((hit) => hit.teams.map((t) => [t.team, t.doc_url])),
        );

        anchor.click();
        expect(box.style.display).toBe('none');

        expect(articleHtml(doc)).toBe(before);
    });

    it('suppresses the tab when the page has no hits', async () => {
        const { ctx, doc } = pageContext('https://en.wikipedia.org/wiki/Unrelated_page');
        expect(await activate(ctx, fetch)).toBeNull();
        expect(doc.getElementById(TAB_ID)).toBeNull();
        expect(doc.getElementById(BOX_ID)).toBeNull();
    });

    it('is a no-op on non-article namespaces', async () => {
        const { ctx, doc } = pageContext('https://en.wikipedia.org/wiki/Special:Search');
        expect(await activate(ctx, fetch)).toBeNull();
        expect(doc.getElementById(TAB_ID)).toBeNull();
    });

    it('respects the wiki namespace variable over the path', async () => {
        const { ctx, doc } = pageContext();
        ctx.mw = { config: { get: (name) => (name === 'wgNamespaceNumber' ? 2 : null) } };
        expect(await activate(ctx, fetch)).toBeNull();
        expect(doc.getElementById(TAB_ID)).toBeNull();
    });

    it('survives a dead service without touching the page', async () => {
        const { ctx, doc } = pageContext();
        ctx.localStorage = { getItem: () => 'http://127.0.0.1:1' };
        const before = doc.body.outerHTML;
        expect(await activate(ctx, fetch)).toBeNull();
        expect(doc.body.outerHTML).toBe(before);
    });
});

describe('endpoint override', () => {
    it('localStorage override wins over the default', () => {
        const cfg = resolveConfig({ getItem: () => 'https://pivot.example' });
        expect(cfg.endpoint).toBe('https://pivot.example');
    });

    it('garbage in storage is ignored', () => {
        const cfg = resolveConfig({ getItem: () => 'not a url' });
        expect(cfg.endpoint).toBe('http://127.0.0.1:8000');
    });
});
