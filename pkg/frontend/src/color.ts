/** Colormaps for the density heatmaps.  Values are mapped from [0, 1]. */

export type Rgb = readonly [number, number, number];
export type Colormap = (x: number) => Rgb;

// Viridis sampled at 17 equispaced anchors; linear interpolation between
// anchors stays within ~1/255 of the reference table.
const VIRIDIS_ANCHORS: readonly Rgb[] = [
  [0.267004, 0.004874, 0.329415],
  [0.282327, 0.094955, 0.417331],
  [0.278826, 0.17549, 0.483397],
  [0.258965, 0.251537, 0.524736],
  [0.229739, 0.322361, 0.545706],
  [0.19943, 0.387607, 0.554642],
  [0.172719, 0.448791, 0.557885],
  [0.149039, 0.508051, 0.55725],
  [0.127568, 0.566949, 0.550556],
  [0.120638, 0.625828, 0.533488],
  [0.157851, 0.683765, 0.501686],
  [0.24607, 0.73891, 0.452024],
  [0.369214, 0.788888, 0.382914],
  [0.515992, 0.831158, 0.294279],
  [0.678489, 0.863742, 0.189503],
  [0.845561, 0.887322, 0.099702],
  [0.993248, 0.906157, 0.143936],
];

function clamp01(x: number): number {
  return x < 0 ? 0 : x > 1 ? 1 : x;
}

export const viridis: Colormap = (x) => {
  const s = clamp01(x) * (VIRIDIS_ANCHORS.length - 1);
  const i = Math.min(Math.floor(s), VIRIDIS_ANCHORS.length - 2);
  const f = s - i;
  const a = VIRIDIS_ANCHORS[i]!;
  const b = VIRIDIS_ANCHORS[i + 1]!;
  return [
    a[0] + f * (b[0] - a[0]),
    a[1] + f * (b[1] - a[1]),
    a[2] + f * (b[2] - a[2]),
  ];
};

export const gray: Colormap = (x) => {
  const v = clamp01(x);
  return [v, v, v];
};

const BY_NAME: Record<string, Colormap> = { viridis, gray };

export function colormapByName(name: string): Colormap {
  const cmap = BY_NAME[name];
  if (cmap === undefined) {
    throw new Error(`unknown colormap "${name}" (choose from ${Object.keys(BY_NAME).join(", ")})`);
  }
  return cmap;
}

/** 8-bit channel value for a unit-interval intensity. */
export function toByte(channel: number): number {
  return Math.max(0, Math.min(255, Math.round(channel * 255)));
}

export function rgbToHex(rgb: Rgb): string {
  const hex = (c: number) => toByte(c).toString(16).padStart(2, "0");
  return `#${hex(rgb[0])}${hex(rgb[1])}${hex(rgb[2])}`;
}
