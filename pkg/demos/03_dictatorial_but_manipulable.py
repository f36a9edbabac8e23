"""With indifference allowed, a dictatorial rule can still be manipulable.

The built-in ``paper-example`` rule hands voter 1 the choice; ties among
voter 1's top alternatives go to whichever of them voter 2's *inverted*
report likes best (alphabetically first if still tied).  Voter 1 always gets
one of their tops, so the rule is dictatorial, yet voter 2 profits from
reporting the inverse of their true order, so it is not even individually
strategy-proof and preference reversal fails.

Run with:  python demos/03_dictatorial_but_manipulable.py
"""

from prefrev import (
    AlternativeSet,
    Domain,
    FeasibleSet,
    Profile,
    builtin,
    check_dictator,
    check_isp,
    check_pr,
    evaluate,
    parse_order,
    report_to_dict,
    revalidate_witness,
)
from prefrev.scf import dumps_canonical

alts = AlternativeSet.letters(3)
domain = Domain.shared(FeasibleSet.universal_weak(alts), 2)
phi = builtin("paper-example", domain)

print("== the scripted manipulation ==")
p1 = parse_order("a~b>c", alts)
p2 = parse_order("b>a>c", alts)
honest = Profile((p1, p2))
lying = Profile((p1, p2.invert()))
print(f"voter 1 reports {'a~b>c'}, voter 2 truly holds {'b>a>c'}")
print("honest outcome :", alts.names[evaluate(phi, honest)])
print("after voter 2 reports the inverse c>a>b:", alts.names[evaluate(phi, lying)])
print("voter 2 strictly prefers b to a, so lying pays off")
print()

print("== the checkers agree ==")
dictator = check_dictator(phi)
isp = check_isp(phi)
pr = check_pr(phi)
print("dictatorial :", dictator.holds, f"(voter {dictator.witness + 1})")
print("isp         :", isp.holds)
print("pr          :", pr.holds)
print("isp witness re-validates:", revalidate_witness(phi, "isp", isp.witness))
print()
print("== the canonical isp witness, as the CLI would print it ==")
print(dumps_canonical(report_to_dict(isp)))
