import { scaleLinear } from "d3-scale";

import type { Series } from "./csv.js";
import type { FigureSpec } from "./spec.js";

const WIDTH = 760;
const HEIGHT = 520;
const MARGIN = { top: 48, right: 24, bottom: 58, left: 72 };

const SCHEME_COLORS: Record<string, string> = {
  "ql-jira": "#d62728",
  "r-irs-optimal": "#1f77b4",
  rs: "#2ca02c",
  fpa: "#9467bd",
  rpa: "#8c564b",
  "no-relay": "#7f7f7f",
};
const EXTRA_COLORS = ["#e377c2", "#17becf", "#bcbd22", "#ff7f0e", "#aec7e8", "#98df8a"];
const MARKERS = ["circle", "square", "diamond", "triangle", "cross", "plus"] as const;

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmt(value: number): string {
  return Number(value.toFixed(3)).toString();
}

function marker(kind: (typeof MARKERS)[number], x: number, y: number, color: string): string {
  const r = 3.5;
  switch (kind) {
    case "circle":
      return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${color}"/>`;
    case "square":
      return `<rect x="${fmt(x - r)}" y="${fmt(y - r)}" width="${2 * r}" height="${2 * r}" fill="${color}"/>`;
    case "diamond":
      return `<path d="M${fmt(x)} ${fmt(y - r)} L${fmt(x + r)} ${fmt(y)} L${fmt(x)} ${fmt(y + r)} L${fmt(x - r)} ${fmt(y)} Z" fill="${color}"/>`;
    case "triangle":
      return `<path d="M${fmt(x)} ${fmt(y - r)} L${fmt(x + r)} ${fmt(y + r)} L${fmt(x - r)} ${fmt(y + r)} Z" fill="${color}"/>`;
    case "cross":
      return `<path d="M${fmt(x - r)} ${fmt(y - r)} L${fmt(x + r)} ${fmt(y + r)} M${fmt(x - r)} ${fmt(y + r)} L${fmt(x + r)} ${fmt(y - r)}" stroke="${color}" stroke-width="1.8"/>`;
    case "plus":
      return `<path d="M${fmt(x - r)} ${fmt(y)} L${fmt(x + r)} ${fmt(y)} M${fmt(x)} ${fmt(y - r)} L${fmt(x)} ${fmt(y + r)}" stroke="${color}" stroke-width="1.8"/>`;
  }
}

function seriesColor(scheme: string, index: number): string {
  return SCHEME_COLORS[scheme] ?? EXTRA_COLORS[index % EXTRA_COLORS.length];
}

/**
 * Render one figure as a standalone SVG string.
 *
 * Pure function of (spec, series): no clock, no randomness, so a given CSV
 * always produces identical bytes.  Error bars (mean +/- std) appear for
 * points with trials > 1 and std > 0.
 */
export function renderFigure(spec: FigureSpec, series: Series[]): string {
  const points = series.flatMap((s) => s.points);
  const xValues = points.map((p) => p.x);
  const yLow = points.map((p) => p.y - (p.trials > 1 ? p.std : 0));
  const yHigh = points.map((p) => p.y + (p.trials > 1 ? p.std : 0));

  const xDomain = points.length ? [Math.min(...xValues), Math.max(...xValues)] : [0, 1];
  const yDomain = points.length ? [Math.min(0, ...yLow), Math.max(...yHigh)] : [0, 1];
  if (xDomain[0] === xDomain[1]) xDomain[1] = xDomain[0] + 1;
  if (yDomain[0] === yDomain[1]) yDomain[1] = yDomain[0] + 1;

  const x = scaleLinear().domain(xDomain).range([MARGIN.left, WIDTH - MARGIN.right]).nice();
  const y = scaleLinear().domain(yDomain).range([HEIGHT - MARGIN.bottom, MARGIN.top]).nice();

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text class="title" x="${WIDTH / 2}" y="26" text-anchor="middle" font-size="16">${esc(spec.title)}</text>`,
  );

  // gridlines and ticks
  for (const tick of x.ticks(8)) {
    const px = x(tick);
    parts.push(
      `<line x1="${fmt(px)}" y1="${MARGIN.top}" x2="${fmt(px)}" y2="${HEIGHT - MARGIN.bottom}" stroke="#e0e0e0"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${HEIGHT - MARGIN.bottom + 20}" text-anchor="middle" font-size="12">${tick}</text>`,
    );
  }
  for (const tick of y.ticks(8)) {
    const py = y(tick);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(py)}" x2="${WIDTH - MARGIN.right}" y2="${fmt(py)}" stroke="#e0e0e0"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${fmt(py + 4)}" text-anchor="end" font-size="12">${tick}</text>`,
    );
  }

  // axes
  parts.push(
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" x2="${WIDTH - MARGIN.right}" y2="${HEIGHT - MARGIN.bottom}" stroke="black"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${HEIGHT - MARGIN.bottom}" stroke="black"/>`,
  );
  parts.push(
    `<text class="x-label" x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 14}" ` +
      `text-anchor="middle" font-size="14">${esc(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text class="y-label" transform="rotate(-90)" x="${-(MARGIN.top + HEIGHT - MARGIN.bottom) / 2}" y="20" ` +
      `text-anchor="middle" font-size="14">${esc(spec.yLabel)}</text>`,
  );

  series.forEach((s, index) => {
    const color = seriesColor(s.scheme, index);
    const kind = MARKERS[index % MARKERS.length];
    const coords = s.points.map((p) => `${fmt(x(p.x))},${fmt(y(p.y))}`).join(" ");
    parts.push(`<g class="series" data-scheme="${esc(s.scheme)}">`);
    if (s.points.length > 1) {
      parts.push(`<polyline points="${coords}" fill="none" stroke="${color}" stroke-width="1.8"/>`);
    }
    for (const p of s.points) {
      const px = x(p.x);
      const py = y(p.y);
      if (p.trials > 1 && p.std > 0) {
        const lo = y(p.y - p.std);
        const hi = y(p.y + p.std);
        parts.push(
          `<line class="error-bar" x1="${fmt(px)}" y1="${fmt(lo)}" x2="${fmt(px)}" y2="${fmt(hi)}" stroke="${color}" stroke-width="1"/>`,
          `<line x1="${fmt(px - 3)}" y1="${fmt(lo)}" x2="${fmt(px + 3)}" y2="${fmt(lo)}" stroke="${color}" stroke-width="1"/>`,
          `<line x1="${fmt(px - 3)}" y1="${fmt(hi)}" x2="${fmt(px + 3)}" y2="${fmt(hi)}" stroke="${color}" stroke-width="1"/>`,
        );
      }
      parts.push(marker(kind, px, py, color));
    }
    parts.push("</g>");
  });

  // legend, one entry per scheme
  const legendX = WIDTH - MARGIN.right - 150;
  series.forEach((s, index) => {
    const ly = MARGIN.top + 10 + index * 18;
    const color = seriesColor(s.scheme, index);
    parts.push(`<g class="legend-entry">`);
    parts.push(`<line x1="${legendX}" y1="${ly}" x2="${legendX + 22}" y2="${ly}" stroke="${color}" stroke-width="1.8"/>`);
    parts.push(marker(MARKERS[index % MARKERS.length], legendX + 11, ly, color));
    parts.push(`<text x="${legendX + 28}" y="${ly + 4}" font-size="12">${esc(s.scheme)}</text>`);
    parts.push("</g>");
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
