/** A run of the query echo, marked when the dealer recognized it. */
export interface Segment {
  text: string;
  highlighted: boolean;
}

/**
 * Split the query echo into segments, highlighting the words the model
 * matched. Matching is case-insensitive and token-exact: only maximal
 * alphabetic runs equal to a matched term light up, so "fast" never
 * highlights inside "breakfast".
 */
export function highlight(text: string, matchedTerms: string[]): Segment[] {
  if (text.length === 0) return [];
  const matched = new Set(matchedTerms.map((t) => t.toLowerCase()));
  const segments: Segment[] = [];
  const push = (part: string, lit: boolean) => {
    if (part.length === 0) return;
    const last = segments[segments.length - 1];
    if (last && last.highlighted === lit) {
      last.text += part;
    } else {
      segments.push({ text: part, highlighted: lit });
    }
  };
  let rest = text;
  const wordRe = /[a-zA-Z]+/;
  for (;;) {
    const hit = wordRe.exec(rest);
    if (!hit || hit.index === undefined) {
      push(rest, false);
      return segments;
    }
    push(rest.slice(0, hit.index), false);
    push(hit[0], matched.has(hit[0].toLowerCase()));
    rest = rest.slice(hit.index + hit[0].length);
  }
}
