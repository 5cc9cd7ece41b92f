// Entry point: wires controls, the snapshot stream, and the three views.
// Add ?twobuttons=1 for one dedicated token button per system instead of the
// shared acceptor plus target switch.

import { GameClient } from "./api.js";
import { drawEiChart, renderDashboardText, type DashboardElements } from "./dashboard.js";
import { drawPetri, drawSwarm, type Ctx2D } from "./render.js";
import { ViewModel } from "./viewmodel.js";

const client = new GameClient("");
const vm = new ViewModel();

function element(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found;
}

function context(id: string): Ctx2D {
  const canvas = element(id) as HTMLCanvasElement;
  return canvas.getContext("2d") as unknown as Ctx2D;
}

const swarmCtx = context("swarm-canvas");
const petriCtx = context("petri-canvas");
const chartCtx = context("chart-canvas");
const dashboard: DashboardElements = {
  stageBadge: element("stage-badge"),
  countdown: element("countdown"),
  counters: element("counters"),
  target: element("target"),
  health: element("health"),
  connection: element("connection"),
};

const twoButtons = new URLSearchParams(location.search).get("twobuttons") === "1";
element("controls-shared").hidden = twoButtons;
element("controls-two").hidden = !twoButtons;

function wire(id: string, action: () => Promise<unknown>): void {
  element(id).addEventListener("click", () => {
    action().catch((error) => console.error(error));
  });
}

wire("insert-token", () => client.insertToken());
wire("switch-target", () => client.switchTarget());
wire("insert-seaweed", () => client.insertToken("seaweed"));
wire("insert-fungi", () => client.insertToken("fungi"));
wire("reset", () => client.reset());

client.connectStream(
  (snap) => vm.applySnapshot(snap),
  (up) => vm.setConnection(up),
);

function frame(): void {
  if (vm.latest) {
    drawSwarm(swarmCtx, vm.latest);
    drawPetri(petriCtx, vm.latest);
    drawEiChart(chartCtx, vm);
  }
  renderDashboardText(vm, dashboard);
  requestAnimationFrame(frame);
}

requestAnimationFrame(frame);
