import { execFile } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";

import { beforeAll, describe, expect, it } from "vitest";

const exec = promisify(execFile);
const CLI = join(import.meta.dirname, "..", "dist", "cli.js");

const HEADER =
  "experiment,scheme,sweep_param,sweep_value,trials,mean_rate_bps_hz,std_rate_bps_hz,seed";
const SCHEMES = ["ql-jira", "r-irs-optimal", "rs", "fpa", "rpa", "no-relay"];

function csvFor(experiment: string, sweepParam: string, values: number[]): string {
  const lines = [HEADER];
  for (const scheme of SCHEMES) {
    values.forEach((value, i) => {
      const mean = (0.1 + 0.05 * SCHEMES.indexOf(scheme) + 0.02 * i).toFixed(6);
      lines.push(`${experiment},${scheme},${sweepParam},${value.toFixed(6)},500,${mean},0.010000,0`);
    });
  }
  return lines.join("\n") + "\n";
}

async function runCli(args: string[]) {
  try {
    const { stdout, stderr } = await exec("node", [CLI, ...args]);
    return { code: 0, stdout, stderr };
  } catch (error) {
    const failure = error as { code?: number; stdout?: string; stderr?: string };
    return { code: failure.code ?? 1, stdout: failure.stdout ?? "", stderr: failure.stderr ?? "" };
  }
}

describe("irsrelay-figures CLI", () => {
  let dir: string;

  beforeAll(() => {
    dir = mkdtempSync(join(tmpdir(), "figures-"));
    writeFileSync(join(dir, "power.csv"), csvFor("power", "tx_power_dbm", [0, 10, 20, 30, 40]));
    writeFileSync(join(dir, "relays.csv"), csvFor("relays", "num_relays", [5, 10, 15, 20, 25, 30]));
    writeFileSync(join(dir, "center.csv"), csvFor("center", "cell_center_y_m", [0, 5, 10, 15, 20]));
    writeFileSync(
      join(dir, "convergence.csv"),
      csvFor("convergence", "episode", [100, 200, 300, 400]),
    );
    writeFileSync(join(dir, "empty.csv"), HEADER + "\n");
    writeFileSync(
      join(dir, "broken.csv"),
      csvFor("power", "tx_power_dbm", [0]).replace("mean_rate_bps_hz", "rate"),
    );
  });

  it("renders all four figures from matching CSVs", async () => {
    const sources = {
      fig2: "power.csv",
      fig3: "relays.csv",
      fig4: "center.csv",
      fig5: "convergence.csv",
    };
    for (const [figure, source] of Object.entries(sources)) {
      const out = join(dir, `${figure}.svg`);
      const result = await runCli([
        "--csv", join(dir, source), "--figure", figure, "--out", out,
      ]);
      expect(result.code, result.stderr).toBe(0);
      expect(result.stderr).toBe("");
      const svg = readFileSync(out, "utf-8");
      expect(svg).toContain("<svg");
      expect(svg.match(/class="series"/g)).toHaveLength(6);
      expect(svg.match(/class="legend-entry"/g)).toHaveLength(6);
    }
  });

  it("accepts a header-only CSV and writes empty axes", async () => {
    const out = join(dir, "empty.svg");
    const result = await runCli(["--csv", join(dir, "empty.csv"), "--figure", "fig2", "--out", out]);
    expect(result.code).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("Transmit Power (dBm)");
  });

  it("fails on a missing column, naming it", async () => {
    const result = await runCli([
      "--csv", join(dir, "broken.csv"), "--figure", "fig2", "--out", join(dir, "broken.svg"),
    ]);
    expect(result.code).not.toBe(0);
    expect(result.stderr).toContain("mean_rate_bps_hz");
  });

  it("fails on an unknown figure id", async () => {
    const result = await runCli([
      "--csv", join(dir, "power.csv"), "--figure", "fig7", "--out", join(dir, "x.svg"),
    ]);
    expect(result.code).not.toBe(0);
    expect(result.stderr).toContain("fig7");
  });

  it("fails on an unreadable CSV path", async () => {
    const result = await runCli([
      "--csv", join(dir, "nope.csv"), "--figure", "fig2", "--out", join(dir, "x.svg"),
    ]);
    expect(result.code).not.toBe(0);
    expect(result.stderr).toContain("nope.csv");
  });

  it("warns when the sweep column does not match the figure", async () => {
    const out = join(dir, "mismatch.svg");
    const result = await runCli([
      "--csv", join(dir, "relays.csv"), "--figure", "fig2", "--out", out,
    ]);
    expect(result.code).toBe(0);
    expect(result.stderr).toContain("num_relays");
  });

  it("produces byte-identical SVGs on repeat runs", async () => {
    const a = join(dir, "rep-a.svg");
    const b = join(dir, "rep-b.svg");
    await runCli(["--csv", join(dir, "power.csv"), "--figure", "fig2", "--out", a]);
    await runCli(["--csv", join(dir, "power.csv"), "--figure", "fig2", "--out", b]);
    expect(readFileSync(a, "utf-8")).toBe(readFileSync(b, "utf-8"));
  });
});
