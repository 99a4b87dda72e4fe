/** Coverage heatmap: proposals x (topics | keywords), color by count. */

import type { CoveragePayload } from "./api.js";
import { CountScale } from "./color.js";
import { clear, el } from "./dom.js";

export interface HeatmapHandlers {
  onCell?: (proposalId: string, column: string, count: number) => void;
}

export function renderHeatmap(
  container: HTMLElement,
  payload: CoveragePayload,
  handlers: HeatmapHandlers = {},
): void {
  clear(container);
  const scale = new CountScale(payload.rows.flatMap((row) => row.counts));
  const head = el("tr", {}, [el("th", { class: "rowhead" }, ["proposal"])]);
  for (const column of payload.columns) {
    head.append(el("th", { class: "colhead", title: column }, [column]));
  }
  const body = el("tbody");
  for (const row of payload.rows) {
    const tr = el("tr", { "data-proposal": row.proposal_id }, [
      el("th", { class: "rowhead" }, [row.proposal_id]),
    ]);
    row.counts.forEach((count, index) => {
      const column = payload.columns[index];
      const cell = el(
        "td",
        {
          class: `cell ${scale.cssClass(count)}`,
          "data-count": String(count),
          "data-column": column,
          title: `${row.proposal_id} / ${column}: ${count}`,
        },
        [String(count)],
      );
      if (handlers.onCell) {
        cell.addEventListener("click", () => handlers.onCell!(row.proposal_id, column, count));
      }
      tr.append(cell);
    });
    body.append(tr);
  }
  const table = el("table", { class: `heatmap heatmap-${payload.granularity}` });
  table.append(el("thead", {}, [head]), body);
  container.append(table);
}
