/**
 * Page title detection. Prefers the wiki's own page-name variable and
 * falls back to the /wiki/ path segment. Non-article namespaces are a
 * no-op (null) so the gadget stays silent on Special:, Talk:, etc.
 */

const NON_ARTICLE_PREFIXES = [
    'special', 'talk', 'user', 'user_talk', 'wikipedia', 'wikipedia_talk',
    'file', 'file_talk', 'mediawiki', 'mediawiki_talk', 'template',
    'template_talk', 'help', 'help_talk', 'category', 'category_talk',
    'portal', 'portal_talk', 'draft', 'draft_talk', 'module', 'module_talk',
];

function isNonArticle(rawTitle: string): boolean {
    const colon = rawTitle.indexOf(':');
    if (colon <= 0) return false;
    const prefix = rawTitle.slice(0, colon).toLowerCase().replace(/ /g, '_');
    return NON_ARTICLE_PREFIXES.includes(prefix);
}

function normalize(rawTitle: string): string | null {
    let decoded = rawTitle;
    try {
        decoded = decodeURIComponent(rawTitle);
    } catch {
        // keep the raw form; a malformed escape is still a usable title
    }
    if (isNonArticle(decoded)) return null;
    const title = decoded.replace(/_/g, ' ').trim();
    return title || null;
}

/**
 * Resolve the article title for the current page.
 *
 * @param pathname  location.pathname, expected /wiki/<Title> for articles
 * @param mwPageName  the wiki's page-name config variable when available
 */
export function extractTitle(pathname: string, mwPageName?: string | null): string | null {
    if (mwPageName) {
        return normalize(mwPageName);
    }
    const match = /^\/wiki\/(.+)$/.exec(pathname);
    if (!match) return null;
    return normalize(match[1]);
}
