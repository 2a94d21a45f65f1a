export type Scale = (value: number) => number;

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const slope = (r1 - r0) / (d1 - d0);
  return (value) => r0 + (value - d0) * slope;
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  const raw = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= count) ?? mag * 10;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += step) {
    out.push(Math.abs(v) < 1e-12 ? 0 : Number(v.toPrecision(12)));
  }
  return out;
}

const fmt = (v: number) => Number(v.toPrecision(6)).toString();

export interface Stroke {
  color: string;
  width?: number;
  dash?: string;
}

export function polylinePath(xs: number[], ys: number[], sx: Scale, sy: Scale): string {
  let d = "";
  for (let i = 0; i < xs.length; i++) {
    d += (i === 0 ? "M" : "L") + fmt(sx(xs[i]!)) + " " + fmt(sy(ys[i]!));
  }
  return d;
}

export function pathElement(d: string, stroke: Stroke): string {
  const dash = stroke.dash ? ` stroke-dasharray="${stroke.dash}"` : "";
  return `<path d="${d}" fill="none" stroke="${stroke.color}" stroke-width="${stroke.width ?? 1.4}"${dash}/>`;
}

export function polygonElement(xs: number[], ys: number[], sx: Scale, sy: Scale, fill: string): string {
  const pts = xs.map((x, i) => fmt(sx(x)) + "," + fmt(sy(ys[i]!))).join(" ");
  return `<polygon points="${pts}" fill="${fill}" stroke="none"/>`;
}

export interface Frame {
  x0: number;
  y0: number;
  width: number;
  height: number;
  sx: Scale;
  sy: Scale;
  elements: string[];
}

export function makeFrame(
  x0: number,
  y0: number,
  width: number,
  height: number,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
): Frame {
  const sx = linearScale(xDomain[0], xDomain[1], x0, x0 + width);
  const sy = linearScale(yDomain[0], yDomain[1], y0 + height, y0);
  const parts: string[] = [];
  parts.push(`<rect x="${x0}" y="${y0}" width="${width}" height="${height}" fill="white" stroke="#444" stroke-width="1"/>`);
  for (const t of ticks(xDomain[0], xDomain[1])) {
    const px = fmt(sx(t));
    parts.push(`<line x1="${px}" y1="${fmt(y0 + height)}" x2="${px}" y2="${fmt(y0 + height + 4)}" stroke="#444"/>`);
    parts.push(`<text x="${px}" y="${fmt(y0 + height + 16)}" font-size="10" text-anchor="middle" fill="#222">${t}</text>`);
  }
  for (const t of ticks(yDomain[0], yDomain[1])) {
    const py = fmt(sy(t));
    parts.push(`<line x1="${fmt(x0 - 4)}" y1="${py}" x2="${x0}" y2="${py}" stroke="#444"/>`);
    parts.push(`<text x="${fmt(x0 - 7)}" y="${py}" font-size="10" text-anchor="end" dominant-baseline="middle" fill="#222">${t}</text>`);
  }
  parts.push(
    `<text x="${fmt(x0 + width / 2)}" y="${fmt(y0 + height + 32)}" font-size="12" text-anchor="middle" fill="#000">${xLabel}</text>`,
  );
  parts.push(
    `<text x="${fmt(x0 - 34)}" y="${fmt(y0 + height / 2)}" font-size="12" text-anchor="middle" fill="#000" transform="rotate(-90 ${fmt(x0 - 34)} ${fmt(y0 + height / 2)})">${yLabel}</text>`,
  );
  return { x0, y0, width, height, sx, sy, elements: parts };
}

export function clipTo(frame: Frame, id: string): string {
  return `<clipPath id="${id}"><rect x="${frame.x0}" y="${frame.y0}" width="${frame.width}" height="${frame.height}"/></clipPath>`;
}

export function legendBox(frame: Frame, entries: { label: string; stroke: Stroke }[]): string[] {
  const parts: string[] = [];
  const lx = frame.x0 + 10;
  let ly = frame.y0 + 14;
  for (const entry of entries) {
    const dash = entry.stroke.dash ? ` stroke-dasharray="${entry.stroke.dash}"` : "";
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" stroke="${entry.stroke.color}" stroke-width="${entry.stroke.width ?? 1.6}"${dash}/>`,
    );
    parts.push(`<text x="${lx + 28}" y="${ly + 3.5}" font-size="10" fill="#222">${entry.label}</text>`);
    ly += 14;
  }
  return parts;
}

export function svgDocument(width: number, height: number, body: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}
