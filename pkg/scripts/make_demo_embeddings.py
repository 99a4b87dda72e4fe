#!/usr/bin/env python3
"""Regenerate the bundled demo embedding table (src/laip/data/embeddings_demo.txt).

The table is synthetic but structured: every single-word lexicon keyword gets
a cluster of related surface forms at high cosine similarity, a few
off-topic "trap" words sit below the default acceptance threshold, and the
rest of the corpus vocabulary gets quasi-orthogonal vectors so paragraph
embeddings separate cleanly. Fully deterministic for a fixed seed.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from laip.analysis import tokenize  # noqa: E402
from laip.corpus import load_corpus  # noqa: E402
from laip.embeddings import write_embeddings_text  # noqa: E402
from laip.lexicon import load_lexicon  # noqa: E402

DIM = 24
SEED = 20240101
MEMBER_SIMILARITY = 0.90  # target cosine of cluster members to their canonical
TRAP_SIMILARITY = 0.45  # below the 0.55 default threshold
ACCEPT_THRESHOLD = 0.55
CENTER_MAX_COSINE = 0.32  # keep cluster centers mutually far apart

# Related surface forms per single-word canonical; these become embedding
# expansion candidates above the default threshold.
CLUSTERS: dict[str, list[str]] = {
    "humanity": ["humankind", "mankind"],
    "beneficial": ["benefit", "benefits", "benefiting"],
    "well-being": ["wellbeing", "wellness"],
    "dignity": ["dignified"],
    "freedom": ["freedoms", "liberty", "liberties"],
    "education": ["educate", "educated", "educational", "training"],
    "human-centered": ["human-centric"],
    "human-friendly": [],
    "partnership": ["partnerships", "partners", "partner"],
    "cooperation": ["cooperate", "cooperative", "cooperatively"],
    "collaboration": [],  # recorded in the curation file instead
    "dialogue": ["dialog"],
    "share": ["shared", "sharing", "shares"],
    "equal": ["equally", "equality"],
    "equity": ["equitable"],
    "inequity": ["inequities"],
    "inequality": ["inequalities"],
    "fairness": ["fairly"],  # fair/fairer/unfair/unfairness come from curation
    "justice": ["injustice"],
    "bias": ["biased", "biases", "unbiased"],
    "discrimination": ["discriminate", "discriminatory", "discriminated", "discriminating"],
    "prejudice": ["prejudices", "prejudiced"],
    "transparency": ["transparent", "transparently"],
    "explainable": ["explainability", "explanation", "explanations", "interpretable", "interpretability", "understandable"],
    "predictable": ["predictability", "unpredictable"],
    "intelligible": ["intelligibility"],
    "audit": ["audits", "auditable", "auditability", "audited", "auditing"],
    "trace": ["traceable", "traceability", "tracing"],
    "opaque": ["opacity"],
    "privacy": [],
    "informed": [],
    "security": ["secure", "securely", "insecure"],
    "cybersecurity": ["cyber_security"],
    "cyberattack": ["cyberattacks", "cyber_attacks"],
    "hacks": ["hacked", "hacking", "hack"],
    "confidential": ["confidentiality", "confidentially"],
    "safety": ["safe", "safely", "unsafe"],
    "validation": ["validate", "validated", "validating"],
    "verification": ["verify", "verifiable", "verifiably", "verified"],
    "test": ["tests", "tested", "testing"],
    "controllability": ["controllable"],
    "risk": ["risks", "risky"],
    "accountability": ["accountable"],
    "responsibility": ["responsible", "responsibly", "responsibilities"],
    "agi": [],
    "superintelligence": ["superintelligent", "super_intelligence"],
}

# Off-topic neighbors kept deliberately below the acceptance threshold.
TRAPS: dict[str, list[str]] = {
    "bias": ["variance"],
    "safety": ["danger"],
    "security": ["guard"],
    "share": ["stock"],
    "test": ["exam"],
    "privacy": ["secrecy"],
    "education": ["school"],
    "fairness": ["weather"],
}


def _unit(vector: np.ndarray) -> np.ndarray:
    return vector / np.linalg.norm(vector)


def _member_vector(rng: np.random.Generator, center: np.ndarray, target: float) -> np.ndarray:
    noise = rng.standard_normal(DIM)
    noise -= noise.dot(center) * center
    noise = _unit(noise)
    return _unit(target * center + np.sqrt(1.0 - target * target) * noise)


def main() -> None:
    rng = np.random.default_rng(SEED)
    corpus = load_corpus(ROOT / "src/laip/data/corpus.json")
    lexicon = load_lexicon(ROOT / "src/laip/data/lexicon_base.json")

    corpus_tokens = sorted(
        {
            token
            for proposal in corpus.proposals
            for item in proposal.items
            for token in tokenize(item.title_text) + tokenize(item.explanatory_text)
        }
    )

    single_word_canonicals = [c for c in lexicon.canonicals() if " " not in c]
    for canonical in single_word_canonicals:
        CLUSTERS.setdefault(canonical, [])

    centers: dict[str, np.ndarray] = {}
    for canonical in CLUSTERS:
        while True:
            center = _unit(rng.standard_normal(DIM))
            if all(abs(center.dot(other)) <= CENTER_MAX_COSINE for other in centers.values()):
                centers[canonical] = center
                break

    def clustered_vector(center: np.ndarray, target: float, home: str) -> np.ndarray:
        # Retry until the vector stays safely below the threshold for every
        # other cluster center, so expansion never crosses cluster lines.
        for _ in range(1000):
            candidate = _member_vector(rng, center, target)
            worst = max(abs(candidate.dot(other)) for name, other in centers.items() if name != home)
            if worst < ACCEPT_THRESHOLD - 0.05:
                return candidate
        raise SystemExit(f"could not place a vector near {home!r} clear of other clusters")

    vectors: dict[str, np.ndarray] = {}
    for canonical, center in centers.items():
        vectors[canonical] = center
        for member in CLUSTERS[canonical]:
            sim = MEMBER_SIMILARITY + 0.06 * float(rng.uniform(-1.0, 1.0))
            vectors.setdefault(member, clustered_vector(center, sim, canonical))
        for trap in TRAPS.get(canonical, []):
            vectors.setdefault(trap, clustered_vector(center, TRAP_SIMILARITY, canonical))

    center_matrix = np.stack(list(centers.values()))
    for token in corpus_tokens:
        if token in vectors:
            continue
        while True:
            candidate = _unit(rng.standard_normal(DIM))
            if np.max(np.abs(center_matrix @ candidate)) < ACCEPT_THRESHOLD - 0.05:
                vectors[token] = candidate
                break

    words = list(vectors)
    matrix = np.stack([vectors[w] for w in words]).astype(np.float32)

    # Sanity: no foreign word may sit above the threshold for any canonical.
    normalized = matrix / np.linalg.norm(matrix, axis=1, keepdims=True)
    index = {w: i for i, w in enumerate(words)}
    for canonical, members in CLUSTERS.items():
        scores = normalized @ normalized[index[canonical]]
        allowed = {canonical, *members}
        for word, score in zip(words, scores):
            if score >= ACCEPT_THRESHOLD and word not in allowed:
                raise SystemExit(f"geometry violation: {word!r} scores {score:.3f} against {canonical!r}")
        for member in members:
            if scores[index[member]] < ACCEPT_THRESHOLD + 0.1:
                raise SystemExit(f"cluster member {member!r} too far from {canonical!r}")

    out = ROOT / "src/laip/data/embeddings_demo.txt"
    write_embeddings_text(out, words, matrix)
    print(f"wrote {out}: {len(words)} words, dim {DIM}")


if __name__ == "__main__":
    main()
