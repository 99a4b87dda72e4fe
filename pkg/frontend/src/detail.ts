/** Single-proposal view: metadata, per-topic counts, item texts. */

import type { ProposalDetail } from "./api.js";
import { clear, el } from "./dom.js";

export function renderDetail(
  container: HTMLElement,
  detail: ProposalDetail,
  highlightItem: string | null = null,
): void {
  clear(container);
  const counts = el("div", { class: "topic-counts" });
  for (const [topic, count] of Object.entries(detail.topic_counts)) {
    counts.append(
      el("span", { class: count > 0 ? "count covered" : "count", "data-topic": topic }, [
        `${topic}: ${count}`,
      ]),
    );
  }
  const items = el("ol", { class: "items" });
  for (const item of detail.items) {
    const attrs: Record<string, string> = { class: "item", "data-item": item.item_id };
    if (item.item_id === highlightItem) attrs.class = "item highlight";
    items.append(
      el("li", attrs, [
        el("div", { class: "item-title" }, [item.title_text]),
        el("div", { class: "item-text" }, [item.explanatory_text]),
      ]),
    );
  }
  container.append(
    el("div", { class: "detail" }, [
      el("h2", {}, [detail.title]),
      el("p", { class: "meta" }, [
        `${detail.publisher} (${detail.publisher_type}, ${detail.year}), ` +
          `covers ${Math.round(detail.topic_coverage_percent * 100)}% of topics`,
      ]),
      el("p", { class: "meta" }, [
        el("a", { href: detail.source_url, rel: "noopener" }, ["source document"]),
      ]),
      counts,
      items,
    ]),
  );
}
