"""Weak orders: construction, comparison, enumeration, text notation.

Run with:  python demos/01_orders_and_notation.py
"""

from prefrev import (
    AlternativeSet,
    enumerate_single_peaked,
    enumerate_strict_orders,
    enumerate_weak_orders,
    format_order,
    parse_order,
    prefers,
)

alts = AlternativeSet.letters(3)

print("== the a~b>c notation ==")
w = parse_order("a~b>c", alts)
print("parsed   :", format_order(w, alts), "   rank vector:", w.ranks)
print("a vs b   :", prefers(w, 0, 1).value)
print("a vs c   :", prefers(w, 0, 2).value)
print("top set  :", sorted(alts.names[x] for x in w.top_set()))
print("inverse  :", format_order(w.invert(), alts))
print()

print("== enumeration is canonical (lexicographic in the rank vector) ==")
for k in (1, 2, 3, 4, 5):
    weak = sum(1 for _ in enumerate_weak_orders(k))
    strict = sum(1 for _ in enumerate_strict_orders(k))
    sp = sum(1 for _ in enumerate_single_peaked(k, strict=True))
    print(f"k={k}:  {weak:4d} weak orders   {strict:4d} strict   {sp:3d} strict single-peaked")
print()

print("== all thirteen weak orders on three alternatives ==")
for order in enumerate_weak_orders(3):
    print("  ", format_order(order, alts))
