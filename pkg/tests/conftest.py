"""Shared fixtures and independent naive oracles.

The naive property checkers below work straight from the definitions with
plain ``evaluate`` calls and no index arithmetic, so they are an
implementation-independent cross-check for the production scanners.  The
naive group-manipulation search is deliberately unrestricted: coalitions may
include members who keep their truthful report, which is the raw definition
before the normalization the fast checker applies.
"""

import itertools

import pytest

from prefrev import AlternativeSet, evaluate, iter_profiles


@pytest.fixture
def abc():
    return AlternativeSet.letters(3)


@pytest.fixture
def abcd():
    return AlternativeSet.letters(4)


def naive_isp_holds(scf):
    domain = scf.domain
    for profile in iter_profiles(domain):
        truth = evaluate(scf, profile)
        for v in range(domain.n):
            for order in domain.feasible[v]:
                dev = evaluate(scf, profile.replace(v, order))
                if profile[v].strictly_prefers(dev, truth):
                    return False
    return True


def naive_gsp_holds(scf):
    domain = scf.domain
    voters = range(domain.n)
    for profile in iter_profiles(domain):
        truth = evaluate(scf, profile)
        for size in range(1, domain.n + 1):
            for coalition in itertools.combinations(voters, size):
                pools = [domain.feasible[v].orders for v in coalition]
                for combo in itertools.product(*pools):
                    dev = evaluate(scf, profile.replace_many(dict(zip(coalition, combo))))
                    if all(
                        profile[v].strictly_prefers(dev, truth) for v in coalition
                    ):
                        return False
    return True


def naive_pr_holds(scf):
    domain = scf.domain
    profiles = list(iter_profiles(domain))
    for p in profiles:
        a = evaluate(scf, p)
        for q in profiles:
            b = evaluate(scf, q)
            if a == b:
                continue
            if not any(
                p[v].weakly_prefers(a, b)
                and q[v].weakly_prefers(b, a)
                and p[v] != q[v]
                for v in range(domain.n)
            ):
                return False
    return True


def naive_apr_holds(scf):
    domain = scf.domain
    profiles = list(iter_profiles(domain))
    for p in profiles:
        a = evaluate(scf, p)
        for q in profiles:
            b = evaluate(scf, q)
            if a == b:
                continue
            first = any(
                p[v].weakly_prefers(a, b) and p[v] != q[v] for v in range(domain.n)
            )
            second = any(
                q[v].weakly_prefers(b, a) and p[v] != q[v] for v in range(domain.n)
            )
            if not (first and second):
                return False
    return True
