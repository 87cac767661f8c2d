export {
  DENSITY_HEADER,
  EXPECTATIONS_HEADER,
  MAXIMA_HEADER,
  SchemaError,
  readDensity,
  readExpectations,
  readManifest,
  readManifestSnapshots,
  readMaxima,
} from "./io.js";
export type {
  DensitySnapshot,
  ExpectationsRow,
  Manifest,
  MaximaTracks,
  TrackPoint,
} from "./io.js";
export { fitToView, orthographic, sphericalToCartesian, splitByDepth } from "./geometry.js";
export type { Projected, Vec3, Viewport } from "./geometry.js";
export { colormapByName, gray, rgbToHex, toByte, viridis } from "./color.js";
export type { Colormap, Rgb } from "./color.js";
export { crc32, encodePng, pngDataUri } from "./png.js";
export { renderPendulum } from "./pendulum.js";
export type { PendulumOptions } from "./pendulum.js";
export { renderDensityGrid } from "./densityGrid.js";
export type { DensityGridOptions, DensityGridResult } from "./densityGrid.js";
export { renderSphereTracks } from "./sphereTracks.js";
export type { SphereTracksOptions } from "./sphereTracks.js";
