/** Coverage ranking list; order and numbers come verbatim from the API. */

import type { RankingsPayload } from "./api.js";
import { clear, el } from "./dom.js";

export function renderRankings(
  container: HTMLElement,
  payload: RankingsPayload,
  onSelect?: (proposalId: string) => void,
): void {
  clear(container);
  const body = el("tbody");
  const maxScore = Math.max(1, ...payload.rankings.map((entry) => entry.score));
  for (const entry of payload.rankings) {
    const bar = el("div", {
      class: "rankbar",
      style: `width:${(100 * entry.score) / maxScore}%`,
    });
    const row = el("tr", { class: "rankrow", "data-proposal": entry.proposal_id }, [
      el("td", { class: "rank" }, [String(entry.rank)]),
      el("td", { class: "pid" }, [entry.proposal_id]),
      el("td", { class: "score", "data-score": String(entry.score) }, [String(entry.score)]),
      el("td", { class: "barcell" }, [bar]),
    ]);
    if (onSelect) {
      row.addEventListener("click", () => onSelect(entry.proposal_id));
    }
    body.append(row);
  }
  const table = el("table", { class: `rankings rankings-${payload.granularity}` }, [
    el("thead", {}, [
      el("tr", {}, [
        el("th", {}, ["rank"]),
        el("th", {}, ["proposal"]),
        el("th", {}, ["covered"]),
        el("th", {}, [""]),
      ]),
    ]),
    body,
  ]);
  container.append(table);
}
