import type { ExpertHit } from './api';
import type { GadgetConfig } from './config';

export const TAB_ID = 'expertpivot-tab';
export const BOX_ID = 'expertpivot-box';

/**
 * All strings from the service land in the DOM through createElement +
 * textContent only, never innerHTML, so service data cannot inject markup.
 */

function conceptHref(cfg: GadgetConfig, concept: string): string {
    if (!cfg.conceptLinkBase) return concept;
    return cfg.conceptLinkBase + encodeURIComponent(concept);
}

function buildBox(doc: Document, hits: ExpertHit[], cfg: GadgetConfig): HTMLElement {
    const box = doc.createElement('div');
    box.id = BOX_ID;
    box.style.display = 'none';
    const list = doc.createElement('ul');
    for (const hit of hits) {
        const item = doc.createElement('li');
        const conceptLink = doc.createElement('a');
        conceptLink.className = 'expertpivot-concept';
        conceptLink.href = conceptHref(cfg, hit.concept);
        conceptLink.textContent = hit.label;
        item.appendChild(conceptLink);
        item.appendChild(doc.createTextNode(': '));
        hit.teams.forEach((teamLink, i) => {
            if (i > 0) item.appendChild(doc.createTextNode(', '));
            const anchor = doc.createElement('a');
            anchor.className = 'expertpivot-team';
            anchor.href = teamLink.doc_url;
            anchor.textContent = teamLink.team;
            item.appendChild(anchor);
        });
        list.appendChild(item);
    }
    box.appendChild(list);
    return box;
}

/** The tab goes right of the article/talk tabs; page tools are the
 * fallback when the expected anchor is missing (unfamiliar skin). */
function placeTab(doc: Document, tab: HTMLElement): void {
    const talk = doc.querySelector('#ca-talk');
    if (talk && talk.closest('ul')) {
        talk.after(tab);
        return;
    }
    const tabsList = doc.querySelector('#p-namespaces ul, #p-associated-pages ul');
    if (tabsList) {
        tabsList.appendChild(tab);
        return;
    }
    const tools = doc.querySelector('#p-tb ul, #p-cactions ul');
    if (tools) {
        tools.appendChild(tab);
        return;
    }
    doc.body.appendChild(tab);
}

/**
 * Inject the experts tab and its toggled box. Idempotent: a second call
 * finds the existing tab and leaves the page alone. The box is inserted
 * next to, never inside, the article content subtree.
 */
export function renderTab(doc: Document, hits: ExpertHit[], cfg: GadgetConfig): HTMLElement | null {
    const existing = doc.getElementById(TAB_ID);
    if (existing) return existing;
    if (hits.length === 0) return null;

    const box = buildBox(doc, hits, cfg);
    const boxHome = doc.querySelector('#content') ?? doc.body;
    boxHome.appendChild(box);

    const tab = doc.createElement('li');
    tab.id = TAB_ID;
    const link = doc.createElement('a');
    link.href = '#';
    link.textContent = cfg.tabLabel;
    link.addEventListener('click', (event) => {
        event.preventDefault();
        box.style.display = box.style.display === 'none' ? '' : 'none';
    });
    tab.appendChild(link);
    placeTab(doc, tab);
    return tab;
}
