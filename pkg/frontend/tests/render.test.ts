import { describe, expect, it } from "vitest";

import { worldToScreen } from "../src/camera.js";
import {
  buildScene, paintScene, POINT_RADIUS, SELECTED_RADIUS, toColumns,
} from "../src/render.js";
import type { Canvas2dLike } from "../src/render.js";
import type { EmbeddingJson } from "../src/types.js";

const EMB: EmbeddingJson = {
  version: 1,
  projection: { method: "pca", latent_dim: 4 },
  points: [
    { id: "a", x: 0, y: 0, label: "", meta: {} },
    { id: "b", x: 1, y: 1, label: "", meta: {} },
    { id: "c", x: 500, y: 500, label: "", meta: {} },
  ],
};

const CAM = { cx: 0.5, cy: 0.5, zoom: 100 };
const VP = { width: 400, height: 300 };

describe("toColumns", () => {
  it("splits points into parallel arrays", () => {
    const cols = toColumns(EMB);
    expect(cols.ids).toEqual(["a", "b", "c"]);
    expect([...cols.xs]).toEqual([0, 1, 500]);
    expect([...cols.ys]).toEqual([0, 1, 500]);
  });
});

describe("buildScene", () => {
  it("is a pure function: identical inputs, identical scenes", () => {
    const cols = toColumns(EMB);
    const sel = new Set(["b"]);
    const one = buildScene(cols, CAM, VP, sel);
    const two = buildScene(cols, CAM, VP, sel);
    expect(one).toEqual(two);
  });

  it("culls points far outside the viewport", () => {
    const cols = toColumns(EMB);
    const scene = buildScene(cols, CAM, VP, new Set());
    expect([...scene.index]).toEqual([0, 1]);
  });

  it("orders selected points after unselected ones", () => {
    const cols = toColumns(EMB);
    const scene = buildScene(cols, CAM, VP, new Set(["a"]));
    expect(scene.selectedFrom).toBe(1);
    expect(scene.index[scene.index.length - 1]).toBe(0);
  });

  it("projects with the camera transform exactly", () => {
    const cols = toColumns(EMB);
    const scene = buildScene(cols, CAM, VP, new Set());
    const at = scene.index.indexOf(1);
    const s = worldToScreen(CAM, VP, 1, 1);
    expect(scene.sx[at]).toBe(s.x);
    expect(scene.sy[at]).toBe(s.y);
  });
});

describe("paintScene", () => {
  function recordingContext() {
    const calls: string[] = [];
    const ctx: Canvas2dLike = {
      fillStyle: "",
      strokeStyle: "",
      lineWidth: 0,
      beginPath: () => calls.push("begin"),
      arc: (_x, _y, r) => calls.push(`arc r=${r}`),
      fill: function (this: void) {
        calls.push(`fill ${ctx.fillStyle as string}`);
      },
      stroke: () => calls.push(`stroke ${ctx.strokeStyle as string}`),
    };
    return { ctx, calls };
  }

  it("fills every visible point and outlines the selected ones", () => {
    const cols = toColumns(EMB);
    const scene = buildScene(cols, CAM, VP, new Set(["b"]));
    const { ctx, calls } = recordingContext();
    paintScene(ctx, scene, ["#111111", "#222222", "#333333"], "#000000");
    expect(calls).toEqual([
      "begin", `arc r=${POINT_RADIUS}`, "fill #111111",
      "begin", `arc r=${SELECTED_RADIUS}`, "fill #222222", "stroke #000000",
    ]);
  });
});
