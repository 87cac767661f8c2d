import { inflateSync } from "node:zlib";

export function countMatches(text: string, pattern: RegExp): number {
  const flags = pattern.flags.includes("g") ? pattern.flags : pattern.flags + "g";
  return [...text.matchAll(new RegExp(pattern.source, flags))].length;
}

export interface DecodedPng {
  width: number;
  height: number;
  /** [r, g, b] bytes at (row, col), top row first. */
  at(row: number, col: number): [number, number, number];
}

/** Decode the first embedded PNG data URI in an SVG string. */
export function decodeEmbeddedPng(svg: string): DecodedPng {
  const match = svg.match(/href="data:image\/png;base64,([^"]+)"/);
  if (!match) throw new Error("no embedded PNG found");
  const png = Buffer.from(match[1]!, "base64");
  const signature = [0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a];
  signature.forEach((byte, i) => {
    if (png[i] !== byte) throw new Error("bad PNG signature");
  });
  let offset = 8;
  let width = 0;
  let height = 0;
  const idat: Buffer[] = [];
  while (offset < png.length) {
    const length = png.readUInt32BE(offset);
    const type = png.toString("latin1", offset + 4, offset + 8);
    const data = png.subarray(offset + 8, offset + 8 + length);
    if (type === "IHDR") {
      width = data.readUInt32BE(0);
      height = data.readUInt32BE(4);
      if (data[8] !== 8 || data[9] !== 2) throw new Error("expected 8-bit truecolor");
    } else if (type === "IDAT") {
      idat.push(Buffer.from(data));
    }
    offset += 12 + length;
  }
  const raw = inflateSync(Buffer.concat(idat));
  const stride = 3 * width + 1;
  for (let row = 0; row < height; row++) {
    if (raw[row * stride] !== 0) throw new Error("expected filter byte 0");
  }
  return {
    width,
    height,
    at(row, col) {
      const base = row * stride + 1 + 3 * col;
      return [raw[base]!, raw[base + 1]!, raw[base + 2]!];
    },
  };
}
