#!/usr/bin/env python3
"""Grounds the trust-dynamics formulas over alice, bob and carol.

Writes two variants into corpus/:
  trust_product.fz    steps 0-1, product conjunction in the transitivity
                      rule, facts 0.8, 0.7 and a 0.2 conflict alice->carol
  trust_lukasiewicz.fz  steps 0-3, Lukasiewicz conjunction in the
                      transitivity rule, conflicts alice->bob 0.1 at step 0
                      and 0.5 at step 2, constraints written as `B ->r 0`
plus the intended model of each as JSON ("num/den" strings).
"""

import json
from fractions import Fraction
from pathlib import Path

PEOPLE = ["alice", "bob", "carol"]


def t(x, y, s):
    return f"trust({x},{y},{s})"


def d(x, y, s):
    return f"distrust({x},{y},{s})"


def c(x, y, s):
    return f"conflict({x},{y},{s})"


def pairs():
    return [(x, y) for x in PEOPLE for y in PEOPLE]


def ground(steps, trans_op, constraints_as_rules, facts, conflicts):
    parts = []
    for s in steps:
        for x in PEOPLE:
            parts.append(t(x, x, s))
    for s in steps:
        for x, y in pairs():
            if constraints_as_rules:
                parts.append(f"{t(x, y, s)} &l {d(x, y, s)} ->r 0")
                parts.append(f"not_s ({t(x, y, s)} |l {d(x, y, s)}) ->r 0")
            else:
                parts.append(f"not_s ({t(x, y, s)} &l {d(x, y, s)})")
                parts.append(f"not_s not_s ({t(x, y, s)} |l {d(x, y, s)})")
    for x in PEOPLE:
        for y in PEOPLE:
            for z in PEOPLE:
                parts.append(f"{t(x, y, 0)} {trans_op} {t(y, z, 0)} ->r {t(x, z, 0)}")
    for x, y in pairs():
        parts.append(f"not_s {t(x, y, 0)} ->r {d(x, y, 0)}")
    for s, s2 in zip(steps, steps[1:]):
        for x, y in pairs():
            parts.append(f"{t(x, y, s)} &m not_s not_s {t(x, y, s2)} ->r {t(x, y, s2)}")
            parts.append(f"{d(x, y, s)} &m not_s not_s {d(x, y, s2)} ->r {d(x, y, s2)}")
            parts.append(f"{c(x, y, s)} |l {d(x, y, s)} ->r {d(x, y, s2)}")
    for atom, v in facts + conflicts:
        parts.append(f"{v} ->r {atom}")
    return " &m\n".join(f"({p})" for p in parts) + "\n"


def model(steps, trans, facts, conflicts):
    val = {}
    fact = {a: Fraction(v) for a, v in facts}
    conf = {a: Fraction(v) for a, v in conflicts}
    tr = {(x, y): fact.get(t(x, y, 0), Fraction(0)) for x, y in pairs()}
    for x in PEOPLE:
        tr[(x, x)] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for x in PEOPLE:
            for y in PEOPLE:
                for z in PEOPLE:
                    v = trans(tr[(x, y)], tr[(y, z)])
                    if v > tr[(x, z)]:
                        tr[(x, z)] = v
                        changed = True
    dis = {p: 1 - tr[p] for p in pairs()}
    for s_i, s in enumerate(steps):
        for x, y in pairs():
            val[t(x, y, s)] = tr[(x, y)]
            val[d(x, y, s)] = dis[(x, y)]
        if s_i + 1 < len(steps):
            for x, y in pairs():
                k = conf.get(c(x, y, s), Fraction(0))
                val[c(x, y, s)] = k
                dis[(x, y)] = min(Fraction(1), dis[(x, y)] + k)
                tr[(x, y)] = min(tr[(x, y)], 1 - dis[(x, y)])
    return {a: str(v) for a, v in sorted(val.items())}


def main():
    root = Path(__file__).resolve().parent.parent / "corpus"
    variants = {
        "trust_product": dict(
            steps=[0, 1],
            trans_op="&p",
            trans=lambda a, b: a * b,
            constraints_as_rules=False,
            facts=[(t("alice", "bob", 0), "0.8"), (t("bob", "carol", 0), "0.7")],
            conflicts=[(c("alice", "carol", 0), "0.2")],
        ),
        "trust_lukasiewicz": dict(
            steps=[0, 1, 2, 3],
            trans_op="&l",
            trans=lambda a, b: max(Fraction(0), a + b - 1),
            constraints_as_rules=True,
            facts=[(t("alice", "bob", 0), "0.8"), (t("bob", "carol", 0), "0.7")],
            conflicts=[(c("alice", "bob", 0), "0.1"), (c("alice", "bob", 2), "0.5")],
        ),
    }
    for name, v in variants.items():
        text = ground(v["steps"], v["trans_op"], v["constraints_as_rules"], v["facts"], v["conflicts"])
        header = f"# {name}: generated by tools/ground_trust.py\n"
        (root / f"{name}.fz").write_text(header + text)
        m = model(v["steps"], v["trans"], v["facts"], v["conflicts"])
        (root / f"{name}.model.json").write_text(json.dumps(m, indent=1) + "\n")


if __name__ == "__main__":
    main()
