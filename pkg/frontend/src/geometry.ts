/** Small 3D helpers: orthographic projection and sphere parametrization. */

export type Vec3 = readonly [number, number, number];

export interface Projected {
  /** Screen-right component in data units. */
  u: number;
  /** Screen-up component in data units. */
  v: number;
  /** Signed distance toward the viewer; positive is in front. */
  depth: number;
}

/**
 * Orthographic projection looking at the origin from spherical view angles.
 * With elevation 0 and azimuth 0 the viewer sits on the +x axis: +y maps to
 * screen-right and +z to screen-up.
 */
export function orthographic(elevDeg: number, azimDeg: number): (p: Vec3) => Projected {
  const elev = (elevDeg * Math.PI) / 180;
  const azim = (azimDeg * Math.PI) / 180;
  const ca = Math.cos(azim);
  const sa = Math.sin(azim);
  const ce = Math.cos(elev);
  const se = Math.sin(elev);
  return ([x, y, z]: Vec3) => {
    const xr = ca * x + sa * y; // toward the viewer before elevation
    const yr = -sa * x + ca * y;
    return {
      u: yr,
      v: -se * xr + ce * z,
      depth: ce * xr + se * z,
    };
  };
}

/** Physics convention: theta is the polar angle from +z, phi the azimuth from +x. */
export function sphericalToCartesian(theta: number, phi: number, radius = 1): Vec3 {
  const st = Math.sin(theta);
  return [radius * st * Math.cos(phi), radius * st * Math.sin(phi), radius * Math.cos(theta)];
}

export interface Viewport {
  toPixel(p: Projected): [number, number];
  scale: number;
}

/**
 * Fit projected points into a width x height box with the given margin,
 * preserving aspect ratio and centering the data.
 */
export function fitToView(
  points: readonly Projected[],
  width: number,
  height: number,
  margin: number,
): Viewport {
  if (points.length === 0) throw new Error("fitToView needs at least one point");
  let minU = Infinity;
  let maxU = -Infinity;
  let minV = Infinity;
  let maxV = -Infinity;
  for (const p of points) {
    minU = Math.min(minU, p.u);
    maxU = Math.max(maxU, p.u);
    minV = Math.min(minV, p.v);
    maxV = Math.max(maxV, p.v);
  }
  const spanU = Math.max(maxU - minU, 1e-12);
  const spanV = Math.max(maxV - minV, 1e-12);
  const scale = Math.min((width - 2 * margin) / spanU, (height - 2 * margin) / spanV);
  const cu = (minU + maxU) / 2;
  const cv = (minV + maxV) / 2;
  return {
    scale,
    toPixel: (p: Projected) => [
      width / 2 + (p.u - cu) * scale,
      height / 2 - (p.v - cv) * scale,
    ],
  };
}

/**
 * Split a projected polyline into runs of same depth sign, so back-hemisphere
 * stretches can be styled differently.  Adjacent runs share their boundary
 * point to avoid visual gaps.
 */
export function splitByDepth(points: readonly Projected[]): { front: boolean; run: Projected[] }[] {
  const out: { front: boolean; run: Projected[] }[] = [];
  let current: Projected[] = [];
  let front = true;
  for (const p of points) {
    const pFront = p.depth >= 0;
    if (current.length === 0) {
      front = pFront;
      current.push(p);
    } else if (pFront === front) {
      current.push(p);
    } else {
      current.push(p);
      out.push({ front, run: current });
      current = [p];
      front = pFront;
    }
  }
  if (current.length > 1) out.push({ front, run: current });
  else if (current.length === 1 && out.length === 0) out.push({ front, run: current });
  return out;
}
