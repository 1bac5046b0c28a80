/** Figure identities: each id fixes the axes, labels, and expected sweep column. */

export const FIGURE_IDS = ["fig2", "fig3", "fig4", "fig5"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

export interface FigureSpec {
  id: FigureId;
  title: string;
  xLabel: string;
  yLabel: string;
  sweepParam: string;
}

export const FIGURES: Record<FigureId, FigureSpec> = {
  fig2: {
    id: "fig2",
    title: "Achievable Rate vs. Transmit Power",
    xLabel: "Transmit Power (dBm)",
    yLabel: "Achievable Rate (bps/Hz)",
    sweepParam: "tx_power_dbm",
  },
  fig3: {
    id: "fig3",
    title: "Achievable Rate vs. Number of Relays",
    xLabel: "Number of Relays",
    yLabel: "Achievable Rate (bps/Hz)",
    sweepParam: "num_relays",
  },
  fig4: {
    id: "fig4",
    title: "Achievable Rate vs. Relay Cell Centre Distance",
    xLabel: "Relay Cell Centre Distance along the y-axis (m)",
    yLabel: "Achievable Rate (bps/Hz)",
    sweepParam: "cell_center_y_m",
  },
  fig5: {
    id: "fig5",
    title: "Algorithm Convergence",
    xLabel: "Number of Iterations",
    yLabel: "Achievable Rate (bps/Hz)",
    sweepParam: "episode",
  },
};

export function resolveFigure(id: string): FigureSpec {
  if ((FIGURE_IDS as readonly string[]).includes(id)) {
    return FIGURES[id as FigureId];
  }
  throw new Error(`unknown figure id '${id}' (expected one of ${FIGURE_IDS.join(", ")})`);
}
