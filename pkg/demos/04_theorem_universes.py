"""Brute-force theorem verification over complete table universes.

Three claims, each checked on every one of thousands of tables:

* group strategy-proofness coincides with the almost-preference-reversal
  property, table by table;
* with at most three alternatives in the range, individually strategy-proof
  tables already satisfy preference reversal (and #ISP equals #GSP);
* the implication chain {PR} <= {APR} = {GSP} <= {ISP} never breaks.

Dropping both hypotheses (range of four, incomplete feasible sets) the
bounded search then digs up a genuine ISP-but-not-PR function.

Run with:  python demos/04_theorem_universes.py
"""

from prefrev import (
    AlternativeSet,
    Domain,
    EnumerationSpec,
    FeasibleSet,
    enumerate_strict_orders,
    parse_order,
    search_isp_not_pr,
    verify_prop_apr_gsp,
    verify_summary_equivalence,
    verify_thm_range3,
)

alts = AlternativeSet.letters(3)
strict = sorted(enumerate_strict_orders(3), key=lambda o: o.ranks)


def universe(per_voter):
    fs = FeasibleSet.explicit(alts, strict[:per_voter])
    return EnumerationSpec(Domain.shared(fs, 2), (0, 1, 2))


for spec in (universe(2), universe(3)):
    v1 = verify_prop_apr_gsp(spec)
    v2 = verify_thm_range3(spec)
    v3 = verify_summary_equivalence(spec)
    print(f"universe: {v1.universe}")
    print(f"  gsp == apr on every table  : {v1.holds}")
    print(f"  isp => pr, #isp == #gsp    : {v2.holds} "
          f"({v2.details['isp_tables']} isp tables)")
    print(f"  chain pr <= apr = gsp <= isp: {v3.holds}")
    print()

print("== and with weak orders in the feasible sets ==")
pair = [parse_order("a~b>c", alts), parse_order("c>a~b", alts)]
weak_spec = EnumerationSpec(
    Domain.shared(FeasibleSet.explicit(alts, pair), 2), (0, 1, 2)
)
print("  isp => pr still holds:", verify_thm_range3(weak_spec).holds)
print()

print("== four alternatives, incomplete domain: the implication can break ==")
alts4 = AlternativeSet.letters(4)
orders = [
    parse_order("a~b>c~d", alts4),
    parse_order("d>c>a~b", alts4),
    parse_order("b~c>a~d", alts4),
]
fs4 = FeasibleSet.explicit(alts4, orders)
spec4 = EnumerationSpec(Domain.shared(fs4, 2), (0, 1, 2, 3))
verdict = search_isp_not_pr(spec4, budget=4**9)
if verdict.holds:
    print("  no counterexample in the searched space:", verdict.details)
else:
    scf, (isp, pr) = verdict.counterexample
    entries = ",".join(alts4.names[int(x)] for x in scf.table)
    print(f"  found one after {verdict.checked} tables: table [{entries}]")
    print(f"  isp holds: {isp.holds}, pr holds: {pr.holds}")
    print("  (every feasible set here is incomplete, so no theorem is violated)")
