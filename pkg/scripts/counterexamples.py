#!/usr/bin/env python3
"""Print the smallest instances where three closed forms disagree with
their exact evaluations, next to the corrected statements."""
from qvol.constructions import andrews_askey_check, qfact
from qvol.ehrhart import chapoton_volume, fit_ehrhart_polynomial, leading_coefficient_formula
from qvol.mpoly import MLaurent, Partition
from qvol.poset import Poset
from qvol.qalg import expand_series
from qvol.qint import qint_order_polytope
from qvol.tableaux import RPPShape, gf_shifted_trace, rpp_series, shifted_trace_via_integral


def show(title, lhs, rhs):
    print(f"{title}\n  lhs = {lhs}\n  rhs = {rhs}\n  equal: {lhs == rhs}")


c = andrews_askey_check(0, 1, 0, 1, a=MLaurent())
show("beta integral with shifted bounds, r=0 s=1 k1=0 k2=1 a=0", c.lhs, c.rhs)
c = andrews_askey_check(0, 2, 0, 1, a=MLaurent())
show("same with k2 = 1 < s = 2", c.lhs, c.rhs)

lam, D = Partition(()), 12
enum = rpp_series(RPPShape.shifted(2, lam), D, 1)
show("shifted staircase with trace weight x = q", enum, expand_series(gf_shifted_trace(2, lam, 1), D))
show("  enumeration against the integral route", enum, expand_series(shifted_trace_via_integral(2, lam, 1), D))

P = Poset.chain([1, 2])
E = fit_ehrhart_polynomial(P)
show("top Ehrhart coefficient of a 2-chain against its q-volume",
     E.leading, qint_order_polytope(MLaurent.const(1), P, method="direct"))
show("  against the maj/des formula", E.leading, leading_coefficient_formula(P))
Q = Poset(3, ((1, 3), (2, 3)))
show("[n]! times the top coefficient for O(dual) against [n]! times the maj/des formula",
     chapoton_volume(Q.dual()), qfact(3) * leading_coefficient_formula(Q))
