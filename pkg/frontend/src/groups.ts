/** Publisher-group comparison: grouped bars, SE whiskers, significance marks. */

import type { GroupsPayload, PairTest } from "./api.js";
import { clear, el } from "./dom.js";

const TYPE_LABELS: Record<string, string> = {
  academia_ngo: "academia/NGO",
  government: "government",
  industry: "industry",
};

function pairLabel(test: PairTest): string {
  return `${TYPE_LABELS[test.pair[0]] ?? test.pair[0]} vs ${TYPE_LABELS[test.pair[1]] ?? test.pair[1]}`;
}

export function renderGroups(container: HTMLElement, payload: GroupsPayload): void {
  clear(container);
  const maxMean = Math.max(
    1e-9,
    ...payload.topics.flatMap((topic) => topic.groups.map((group) => group.mean ?? 0)),
  );
  const chart = el("div", { class: "groups" });
  for (const topic of payload.topics) {
    const bars = el("div", { class: "bars" });
    for (const group of topic.groups) {
      const mean = group.mean ?? 0;
      const se = group.standard_error ?? 0;
      const barHeight = (100 * mean) / maxMean;
      const whiskerHeight = (100 * se) / maxMean;
      const bar = el(
        "div",
        {
          class: `bar bar-${group.publisher_type}`,
          style: `height:${barHeight}%`,
          "data-mean": String(group.mean),
          "data-se": group.standard_error === null ? "n/a" : String(group.standard_error),
          title: `${TYPE_LABELS[group.publisher_type]}: mean ${group.mean}, SE ${
            group.standard_error === null ? "n/a" : group.standard_error
          } (n=${group.n})`,
        },
        [
          el("div", {
            class: "whisker",
            style: `height:${whiskerHeight}%`,
          }),
        ],
      );
      bars.append(bar);
    }
    const marks = el("div", { class: "marks" });
    for (const test of topic.tests) {
      if (!test.available) {
        marks.append(
          el("span", { class: "mark unavailable", "data-pair": test.pair.join("|") }, [
            `${pairLabel(test)}: n/a`,
          ]),
        );
        continue;
      }
      const significant = test.significant === true;
      const mark = el(
        "span",
        {
          class: significant ? "mark significant" : "mark",
          "data-pair": test.pair.join("|"),
          "data-p": String(test.p),
          title: `${pairLabel(test)}: p=${test.p}`,
        },
        [significant ? "*" : ""],
      );
      marks.append(mark);
    }
    chart.append(
      el("div", { class: "topic-block", "data-topic": topic.topic_name }, [
        el("div", { class: "topic-name" }, [topic.topic_name]),
        bars,
        marks,
      ]),
    );
  }
  const legend = el("div", { class: "legend" }, [
    el("span", { class: "swatch bar-academia_ngo" }),
    el("span", {}, ["academia/NGO"]),
    el("span", { class: "swatch bar-government" }),
    el("span", {}, ["government"]),
    el("span", { class: "swatch bar-industry" }),
    el("span", {}, ["industry"]),
    el("span", { class: "note" }, ["* pairwise difference significant at 0.05"]),
  ]);
  container.append(legend, chart);
}
