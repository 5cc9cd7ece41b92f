// Port of the engine's seeded gradient noise. The algorithm is part of the
// snapshot contract: plants carry only (edge, noise_scale, seed) and the
// client regenerates the patch mask. Every expression mirrors the engine's
// (same operations, same order), so values are bit-identical IEEE doubles:
//
//   1. xorshift32 PRNG from `seed & 0xFFFFFFFF` (0x9E3779B9 if zero)
//   2. Fisher-Yates over [0..255], i = 255..1, j = next() % (i + 1)
//   3. 8 unit gradients (4 axis, 4 diagonal +/-sqrt(0.5)), pick via hash & 7
//   4. quintic fade t^3(t(6t-15)+10), lerp a + t(b-a)
//   5. map raw by (raw*sqrt(2) + 1) * 0.5, clamp to [0, 1]
//   6. grid samples at (i + 0.5) * (noise_scale / resolution)

const S = Math.sqrt(0.5);
const SQRT2 = Math.sqrt(2.0);
const GRAD_X = [1.0, -1.0, 0.0, 0.0, S, -S, S, -S];
const GRAD_Y = [0.0, 0.0, 1.0, -1.0, S, S, -S, -S];

export function xorshift32(state: number): number {
  let x = state >>> 0;
  x = (x ^ (x << 13)) >>> 0;
  x = (x ^ (x >>> 17)) >>> 0;
  x = (x ^ (x << 5)) >>> 0;
  return x;
}

export function permutationTable(seed: number): number[] {
  let state = (seed & 0xffffffff) >>> 0;
  if (state === 0) state = 0x9e3779b9;
  const p = Array.from({ length: 256 }, (_, i) => i);
  for (let i = 255; i >= 1; i--) {
    state = xorshift32(state);
    const j = state % (i + 1);
    const tmp = p[i];
    p[i] = p[j];
    p[j] = tmp;
  }
  return p;
}

export function noiseValue(p: number[], x: number, y: number): number {
  const xf0 = Math.floor(x);
  const yf0 = Math.floor(y);
  const xi = xf0 & 255;
  const yi = yf0 & 255;
  const dx = x - xf0;
  const dy = y - yf0;
  const u = dx * dx * dx * (dx * (dx * 6.0 - 15.0) + 10.0);
  const v = dy * dy * dy * (dy * (dy * 6.0 - 15.0) + 10.0);

  const h00 = p[(p[xi] + yi) & 255] & 7;
  const h01 = p[(p[xi] + yi + 1) & 255] & 7;
  const h10 = p[(p[(xi + 1) & 255] + yi) & 255] & 7;
  const h11 = p[(p[(xi + 1) & 255] + yi + 1) & 255] & 7;

  const n00 = GRAD_X[h00] * (dx - 0.0) + GRAD_Y[h00] * (dy - 0.0);
  const n10 = GRAD_X[h10] * (dx - 1.0) + GRAD_Y[h10] * (dy - 0.0);
  const n01 = GRAD_X[h01] * (dx - 0.0) + GRAD_Y[h01] * (dy - 1.0);
  const n11 = GRAD_X[h11] * (dx - 1.0) + GRAD_Y[h11] * (dy - 1.0);

  const x1 = n00 + u * (n10 - n00);
  const x2 = n01 + u * (n11 - n01);
  const raw = x1 + v * (x2 - x1);
  const value = (raw * SQRT2 + 1.0) * 0.5;
  return value < 0.0 ? 0.0 : value > 1.0 ? 1.0 : value;
}

export function noiseGrid(seed: number, noiseScale: number, resolution: number): number[][] {
  const p = permutationTable(seed);
  const step = noiseScale / resolution;
  const rows: number[][] = [];
  for (let j = 0; j < resolution; j++) {
    const y = (j + 0.5) * step;
    const row: number[] = [];
    for (let i = 0; i < resolution; i++) {
      row.push(noiseValue(p, (i + 0.5) * step, y));
    }
    rows.push(row);
  }
  return rows;
}

export function maskFraction(
  seed: number,
  edge: number,
  noiseScale: number,
  resolution: number,
): number {
  const grid = noiseGrid(seed, noiseScale, resolution);
  let glowing = 0;
  for (const row of grid) {
    for (const value of row) {
      if (value > edge) glowing += 1;
    }
  }
  return glowing / (resolution * resolution);
}
