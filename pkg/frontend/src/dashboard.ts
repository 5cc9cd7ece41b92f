// Live status readouts: index chart with stage bands, settlement countdown,
// token counters, growth-rate hint. All values come straight off snapshots.

import type { Ctx2D } from "./render.js";
import type { ViewModel } from "./viewmodel.js";

export interface DashboardElements {
  stageBadge: HTMLElement;
  countdown: HTMLElement;
  counters: HTMLElement;
  target: HTMLElement;
  health: HTMLElement;
  connection: HTMLElement;
}

const STAGE_COLORS: Record<string, string> = {
  prosperity: "#2f9e68",
  decline: "#d9a441",
  crisis: "#c8432f",
};

export function renderDashboardText(vm: ViewModel, els: DashboardElements): void {
  const snap = vm.latest;
  els.connection.textContent = vm.connection;
  if (!snap) return;
  els.stageBadge.textContent = snap.stage;
  els.stageBadge.style.background = STAGE_COLORS[snap.stage] ?? "#888";
  els.countdown.textContent = `settlement in ${snap.settlement_countdown.toFixed(1)} s` +
    ` | unsettled ${snap.unsettled_profit.toFixed(2)}`;
  els.counters.textContent =
    `in ${snap.ledger.inserted_seaweed + snap.ledger.inserted_fungi}` +
    ` (seaweed ${snap.ledger.inserted_seaweed} / fungi ${snap.ledger.inserted_fungi})` +
    ` | out ${snap.ledger.dispensed}` +
    ` | plants ${snap.plants.length} (${vm.matureCount()} mature)`;
  els.target.textContent = `token target: ${snap.current_target}`;
  els.health.textContent =
    `swarm health ${(snap.swarm_health * 100).toFixed(0)}%` +
    (snap.oomycete.present ? " | oomycete active" : " | disease-free");
}

// Index history chart; the curve the players are riding.
export function drawEiChart(ctx: Ctx2D, vm: ViewModel, eiMin = -0.6, eiMax = 1.1): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#0c1418";
  ctx.fillRect(0, 0, width, height);
  const points = vm.eiHistory;
  if (points.length < 2) return;

  const toY = (ei: number) => height - ((ei - eiMin) / (eiMax - eiMin)) * height;
  const toX = (index: number) => (index / (points.length - 1)) * width;

  // zero line
  ctx.strokeStyle = "#3a4a52";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, toY(0));
  ctx.lineTo(width, toY(0));
  ctx.stroke();

  ctx.strokeStyle = "#6fd3a0";
  ctx.lineWidth = 2;
  ctx.beginPath();
  points.forEach((point, index) => {
    const x = toX(index);
    const y = toY(point.ei);
    index === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
  });
  ctx.stroke();
}
