/**
 * Maxima-track figure: subpacket maximizer paths drawn on an orthographic
 * sphere with thin wireframe circles.  Up tracks are solid, Down tracks
 * dashed; back-hemisphere stretches are dimmed.
 */

import { orthographic, Projected, sphericalToCartesian, splitByDepth, Vec3 } from "./geometry.js";
import { MaximaTracks, TrackPoint } from "./io.js";
import { el, polyline, svgDoc, text } from "./svg.js";

export interface SphereTracksOptions {
  width?: number;
  height?: number;
  elevDeg?: number;
  azimDeg?: number;
}

const UP_COLOR = "#c0392b";
const DOWN_COLOR = "#1f4e9c";
const DASH = "7 5";

function circlePoints(fixed: "theta" | "phi", angle: number, samples = 180): Vec3[] {
  const pts: Vec3[] = [];
  for (let i = 0; i <= samples; i++) {
    const s = (2 * Math.PI * i) / samples;
    pts.push(
      fixed === "theta"
        ? sphericalToCartesian(angle, s)
        : sphericalToCartesian(s, angle),
    );
  }
  return pts;
}

function styledRuns(
  points: readonly Projected[],
  place: (p: Projected) => [number, number],
  base: Record<string, string | number>,
): string[] {
  return splitByDepth(points).map(({ front, run }) =>
    polyline(run.map(place), front ? base : { ...base, opacity: 0.35 }),
  );
}

function trackElements(
  track: readonly TrackPoint[],
  component: "up" | "down",
  project: (p: Vec3) => Projected,
  place: (p: Projected) => [number, number],
): string[] {
  if (track.length === 0) return [];
  const color = component === "up" ? UP_COLOR : DOWN_COLOR;
  const style: Record<string, string | number> = {
    class: `track track-${component}`,
    stroke: color,
    "stroke-width": 2.2,
    "stroke-linecap": "round",
  };
  if (component === "down") style["stroke-dasharray"] = DASH;
  const projected = track.map((p) => project(sphericalToCartesian(p.theta, p.phi)));
  const parts = track.length > 1 ? styledRuns(projected, place, style) : [];
  const [sx, sy] = place(projected[0]!);
  parts.push(
    el("circle", { class: `start start-${component}`, cx: sx, cy: sy, r: 4, fill: color }),
  );
  return parts;
}

/** Render the sphere-track figure as an SVG string. */
export function renderSphereTracks(tracks: MaximaTracks, opts: SphereTracksOptions = {}): string {
  const width = opts.width ?? 560;
  const height = opts.height ?? 560;
  const project = orthographic(opts.elevDeg ?? 18, opts.azimDeg ?? -55);
  const margin = 40;
  const scale = Math.min(width, height) / 2 - margin;
  const cx = width / 2;
  const cy = height / 2 + 8;
  const place = (p: Projected): [number, number] => [cx + p.u * scale, cy - p.v * scale];

  const children: string[] = [];
  children.push(
    el("circle", {
      class: "silhouette",
      cx,
      cy,
      r: scale,
      fill: "none",
      stroke: "#8a9199",
      "stroke-width": 1,
    }),
  );
  const wire: { points: Vec3[]; equator: boolean }[] = [];
  for (let deg = 30; deg <= 150; deg += 30) {
    wire.push({ points: circlePoints("theta", (deg * Math.PI) / 180), equator: deg === 90 });
  }
  for (let deg = 0; deg < 180; deg += 30) {
    wire.push({ points: circlePoints("phi", (deg * Math.PI) / 180), equator: false });
  }
  for (const { points, equator } of wire) {
    const projected = points.map(project);
    for (const { front, run } of splitByDepth(projected)) {
      children.push(
        polyline(run.map(place), {
          class: "wire",
          stroke: front ? (equator ? "#9aa2ab" : "#b9c0c7") : "#e4e7ea",
          "stroke-width": equator && front ? 1.1 : 0.7,
        }),
      );
    }
  }
  children.push(...trackElements(tracks.up, "up", project, place));
  children.push(...trackElements(tracks.down, "down", project, place));

  // legend
  children.push(polyline([[16, 20], [44, 20]], { class: "legend", stroke: UP_COLOR, "stroke-width": 2.2 }));
  children.push(text(50, 24, "Up (solid)", { "font-size": 12, fill: "#222222" }));
  children.push(
    polyline([[16, 40], [44, 40]], {
      class: "legend",
      stroke: DOWN_COLOR,
      "stroke-width": 2.2,
      "stroke-dasharray": DASH,
    }),
  );
  children.push(text(50, 44, "Down (dashed)", { "font-size": 12, fill: "#222222" }));
  return svgDoc(width, height, children);
}
