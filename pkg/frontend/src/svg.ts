/** String-based SVG assembly: elements, polylines, and a document wrapper. */

export type Attrs = Record<string, string | number>;

/** Fixed-precision coordinate formatting keeps output bytes deterministic. */
export function fmt(value: number): string {
  const rounded = Math.round(value * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

function renderAttrs(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? fmt(v) : v}"`)
    .join("");
}

export function el(tag: string, attrs: Attrs, children?: readonly string[] | string): string {
  const body = children === undefined ? "" : typeof children === "string" ? children : children.join("");
  return body === "" ? `<${tag}${renderAttrs(attrs)}/>` : `<${tag}${renderAttrs(attrs)}>${body}</${tag}>`;
}

export function polyline(points: readonly [number, number][], attrs: Attrs): string {
  const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return el("polyline", { points: coords, fill: "none", ...attrs });
}

export function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function text(x: number, y: number, content: string, attrs: Attrs = {}): string {
  return el(
    "text",
    { x, y, "font-family": "Helvetica, Arial, sans-serif", ...attrs },
    escapeText(content),
  );
}

export function svgDoc(width: number, height: number, children: readonly string[]): string {
  const open =
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">`;
  const background = el("rect", { x: 0, y: 0, width, height, fill: "#ffffff" });
  return `${open}${background}${children.join("")}</svg>\n`;
}
