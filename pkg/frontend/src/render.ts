// Canvas scenes for the two displays: the seaweed swarm on a conventional
// monitor and the fungi in a circular petri dish. Everything is drawn from
// snapshot geometry; the only client-side generation is the disease mask,
// regenerated from (edge, noise_scale, seed) with the shared noise port.

import { noiseGrid } from "./noise.js";
import type { Geometry, PlantSnapshot, Snapshot } from "./types.js";

// Minimal slice of CanvasRenderingContext2D the renderers need; tests pass a
// counting stub.
export interface Ctx2D {
  canvas: { width: number; height: number };
  fillStyle: string | CanvasGradient;
  strokeStyle: string;
  lineWidth: number;
  globalAlpha: number;
  save(): void;
  restore(): void;
  translate(x: number, y: number): void;
  scale(x: number, y: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  stroke(): void;
  fill(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  rect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
  clip(): void;
  fillText(text: string, x: number, y: number): void;
  font: string;
  textAlign: string;
}

// One stroke per segment, one outline per polyline, one disc per circle, so
// draw-call counts mirror the geometry arrays exactly.
export function drawGeometry(ctx: Ctx2D, geometry: Geometry, tint: string): void {
  ctx.strokeStyle = tint;
  ctx.fillStyle = tint;
  for (const [x0, y0, x1, y1, thickness] of geometry.segments) {
    ctx.beginPath();
    ctx.lineWidth = thickness;
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.stroke();
  }
  for (const poly of geometry.polylines) {
    ctx.beginPath();
    poly.points.forEach(([x, y], index) => (index === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
    if (poly.closed) ctx.closePath();
    ctx.fill();
  }
  for (const [x, y, radius] of geometry.circles) {
    ctx.beginPath();
    ctx.arc(x, y, radius, 0, Math.PI * 2);
    ctx.fill();
  }
}

const MASK_RESOLUTION = 24;

// Glowing rot patches over a plant's fronds: cells of the thresholded noise
// grid, drawn inside the plant's unit-space bounding box.
export function drawDiseasePatches(ctx: Ctx2D, plant: PlantSnapshot): void {
  const { edge, noise_scale, seed } = plant.mask;
  if (plant.health >= 1.0) ctx.globalAlpha = 0.35; // healthy: faint specks if any
  const grid = noiseGrid(seed, noise_scale, MASK_RESOLUTION);
  const span = 1.6; // unit-space width covered by the mask
  const cell = span / MASK_RESOLUTION;
  ctx.fillStyle = "#e8ff9a";
  for (let j = 0; j < MASK_RESOLUTION; j++) {
    for (let i = 0; i < MASK_RESOLUTION; i++) {
      if (grid[j][i] > edge) {
        ctx.fillRect(-span / 2 + i * cell, 0.2 + j * cell * 0.75, cell * 0.9, cell * 0.68);
      }
    }
  }
  ctx.globalAlpha = 1.0;
}

export function drawSwarm(ctx: Ctx2D, snap: Snapshot): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#05212e";
  ctx.fillRect(0, 0, width, height);
  ctx.fillStyle = "#0a2f3f";
  ctx.fillRect(0, height - 24, width, 24); // seabed

  if (snap.plants.length === 0) {
    ctx.fillStyle = snap.extinct ? "#ff7a6b" : "#9fb8c4";
    ctx.font = "20px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(
      snap.extinct ? "the swarm has gone extinct" : "nothing is growing yet",
      width / 2,
      height / 2,
    );
    return;
  }

  const slots = Math.max(snap.plants.length, 8);
  snap.plants.forEach((plant, index) => {
    const x = ((index + 0.5) / slots) * width;
    const grown = 60 + 160 * plant.maturity;
    ctx.save();
    ctx.translate(x, height - 24);
    ctx.scale(grown, -grown);
    ctx.lineWidth = 0.02;
    drawGeometry(ctx, plant.geometry, plant.maturity >= 1 ? "#2f9e68" : "#3c7d5c");
    if (plant.health < 1.0 || plant.mask.edge < 0.95) {
      drawDiseasePatches(ctx, plant);
    }
    ctx.restore();
  });
}

export function drawPetri(ctx: Ctx2D, snap: Snapshot): void {
  const { width, height } = ctx.canvas;
  const cx = width / 2;
  const cy = height / 2;
  const dishRadius = Math.min(width, height) / 2 - 10;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#10181c";
  ctx.fillRect(0, 0, width, height);
  ctx.beginPath();
  ctx.arc(cx, cy, dishRadius, 0, Math.PI * 2);
  ctx.fillStyle = "#f4efdd";
  ctx.fill();

  // clip fungi to the dish
  ctx.save();
  ctx.beginPath();
  ctx.arc(cx, cy, dishRadius - 4, 0, Math.PI * 2);
  ctx.clip();
  snap.fungi.forEach((fungus, index) => {
    const angle = (index / Math.max(snap.fungi.length, 1)) * Math.PI * 2;
    const ring = snap.fungi.length === 1 ? 0 : dishRadius * 0.45;
    ctx.save();
    ctx.translate(cx + ring * Math.cos(angle), cy + ring * Math.sin(angle) + dishRadius * 0.2);
    ctx.scale(dishRadius * 0.55, -dishRadius * 0.55);
    ctx.lineWidth = 0.03;
    const tint = fungus.tree.species === "penicillium_like" ? "#3b6ea5" : "#7d4fa0";
    drawGeometry(ctx, fungus.geometry, tint);
    ctx.restore();
  });
  ctx.restore();

  if (snap.oomycete.present) {
    // the antagonist: a red blotch that shrinks as fungi close in on the cure
    const remaining = Math.max(snap.oomycete.required_fungi - snap.oomycete.fungi_count, 0);
    const size = dishRadius * (0.12 + 0.02 * remaining);
    ctx.beginPath();
    ctx.arc(cx, cy - dishRadius * 0.3, size, 0, Math.PI * 2);
    ctx.fillStyle = "#c8432f";
    ctx.fill();
    ctx.fillStyle = "#7a2417";
    ctx.font = "12px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(
      `oomycete: ${snap.oomycete.fungi_count}/${snap.oomycete.required_fungi} fungi`,
      cx,
      cy - dishRadius * 0.3 + 4,
    );
  }
}
