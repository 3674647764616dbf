// SVG board renderer: a grid window onto the quadrant graph with the axes
// drawn as continuous highway rails, quadrant-region neighborhood shading for
// both players (regions, not O(n^2) edges), server-driven legal-move
// highlighting, and an off-viewport indicator.

import type { Pair } from "./api.js";
import { cellKey, neighborhoodRegions, samePair, type ViewModel } from "./model.js";

export const CELL = 26;
const SVG_NS = "http://www.w3.org/2000/svg";

export interface BoardHandlers {
  onCellClick: (x: number, y: number) => void;
  onHover?: (cell: Pair | null) => void;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, String(v));
  }
  return node;
}

export class Board {
  private hovered: Pair | null = null;

  constructor(
    private container: HTMLElement,
    private handlers: BoardHandlers,
  ) {}

  setHover(cell: Pair | null): void {
    this.hovered = cell;
  }

  /** Rebuild the SVG for the given view model (idempotent). */
  render(vm: ViewModel): void {
    const vp = vm.viewport;
    const cols = vp.x1 - vp.x0 + 1;
    const rows = vp.y1 - vp.y0 + 1;
    const width = cols * CELL;
    const height = rows * CELL;
    const svg = el("svg", {
      width,
      height,
      viewBox: `0 0 ${width} ${height}`,
      class: "board",
      role: "grid",
    });
    // y grows upward on screen: row 0 at the bottom
    const px = (x: number) => (x - vp.x0) * CELL;
    const py = (y: number) => (vp.y1 - y) * CELL;

    // highway rails under everything
    if (vp.y0 === 0) {
      svg.appendChild(
        el("rect", { x: 0, y: py(0), width, height: CELL, class: "rail rail-x" }),
      );
    }
    if (vp.x0 === 0) {
      svg.appendChild(
        el("rect", { x: px(0), y: 0, width: CELL, height, class: "rail rail-y" }),
      );
    }

    // neighborhood shading: both players, then the hovered cell
    const shade = (center: Pair | null, cls: string) => {
      if (!center) return;
      const regions = neighborhoodRegions(center, vp);
      for (const region of [regions.upLeft, regions.downRight]) {
        if (!region) continue;
        svg.appendChild(
          el("rect", {
            x: px(region.x0),
            y: py(region.y1),
            width: (region.x1 - region.x0 + 1) * CELL,
            height: (region.y1 - region.y0 + 1) * CELL,
            class: `shade ${cls}`,
          }),
        );
      }
      if (regions.xAxis && vp.y0 === 0) {
        svg.appendChild(el("rect", { x: 0, y: py(0), width, height: CELL, class: `shade ${cls}` }));
      }
      if (regions.yAxis && vp.x0 === 0) {
        svg.appendChild(el("rect", { x: px(0), y: 0, width: CELL, height, class: `shade ${cls}` }));
      }
    };
    shade(vm.view.positions.cop, "shade-cop");
    shade(vm.view.positions.robber, "shade-robber");
    shade(this.hovered, "shade-hover");

    // cells
    for (let x = vp.x0; x <= vp.x1; x++) {
      for (let y = vp.y0; y <= vp.y1; y++) {
        const isOrigin = x === 0 && y === 0;
        const legal = vm.legal.has(cellKey(x, y));
        const pending = samePair(vm.pending, [x, y]);
        const classes = ["cell"];
        if (isOrigin) classes.push("origin");
        if (legal) classes.push("legal");
        if (pending) classes.push("pending");
        const rect = el("rect", {
          x: px(x),
          y: py(y),
          width: CELL,
          height: CELL,
          class: classes.join(" "),
          "data-x": x,
          "data-y": y,
        });
        rect.addEventListener("click", () => this.handlers.onCellClick(x, y));
        rect.addEventListener("mouseenter", () => this.handlers.onHover?.([x, y]));
        rect.addEventListener("mouseleave", () => this.handlers.onHover?.(null));
        svg.appendChild(rect);
      }
    }

    // player markers
    const marker = (p: Pair | null, cls: string, label: string) => {
      if (!p || p[0] < vp.x0 || p[0] > vp.x1 || p[1] < vp.y0 || p[1] > vp.y1) return;
      const c = el("circle", {
        cx: px(p[0]) + CELL / 2,
        cy: py(p[1]) + CELL / 2,
        r: CELL * 0.34,
        class: cls,
        "data-marker": label,
      });
      svg.appendChild(c);
    };
    marker(vm.view.positions.cop, "marker-cop", "cop");
    marker(vm.view.positions.robber, "marker-robber", "robber");

    this.container.replaceChildren(svg);
  }
}
