"""Resolvents and complete feasible sets.

An order W resolves the P-indifference at a when everything P places weakly
below a drops strictly below a in W.  A feasible set is complete when every
admissible (P, Q, a, b) has a member resolving both sides at once; complete
sets are exactly where individual strategy-proofness forces preference
reversal.

Run with:  python demos/02_resolvents_and_complete_domains.py
"""

from prefrev import (
    AlternativeSet,
    FeasibleSet,
    format_order,
    is_complete,
    is_resolvent,
    make_sp_resolvent,
    make_w_ab,
    make_w_prime,
    parse_order,
)

alts = AlternativeSet.letters(4)

print("== the canonical two-top construction ==")
w = make_w_ab(0, 1, 4)
print("w_ab(a, b):", format_order(w, alts))
print("it resolves any P at a, and any Q with a above b at b")
print()

print("== the four-block construction ==")
p = parse_order("a~c>b>d", alts)
q = parse_order("a>b>c~d", alts)
w2 = make_w_prime(0, 1, p, q)
print(f"P = {format_order(p, alts)},  Q = {format_order(q, alts)}")
print("w_prime(a, b, P, Q):", format_order(w2, alts),
      "  resolvent:", is_resolvent(w2, 0, 1, p, q))
print()

print("== a single-peaked resolvent stays single-peaked ==")
nums = AlternativeSet.numbered(5)
sp_p = parse_order("2>3>4>5>1", nums)
sp_q = parse_order("4>5>3>2>1", nums)
w3 = make_sp_resolvent(3, 1, sp_p, sp_q)
print(f"P = {format_order(sp_p, nums)},  Q = {format_order(sp_q, nums)}")
print("resolvent for (4, 2):", format_order(w3, nums))
print()

print("== completeness verdicts ==")
for label, fs in (
    ("all weak orders, k=4", FeasibleSet.universal_weak(alts)),
    ("all strict single-peaked, k=5", FeasibleSet.single_peaked(nums, strict=True)),
    ("the singleton {a~b>c}", FeasibleSet.explicit(
        AlternativeSet.letters(3),
        [parse_order("a~b>c", AlternativeSet.letters(3))],
    )),
):
    report = is_complete(fs)
    if report.complete:
        print(f"{label}: complete ({report.checked} quadruples)")
    else:
        g = report.gap
        a3 = fs.alts
        print(
            f"{label}: INCOMPLETE, no ({a3.names[g.a]},{a3.names[g.b]})-resolvent "
            f"of P={format_order(g.p, a3)}, Q={format_order(g.q, a3)}"
        )
