#!/usr/bin/env python3
"""A short tour: q-volumes of small order polytopes, one q-Selberg value
three ways, and a q-Ehrhart polynomial."""
from qvol.constructions import qfact
from qvol.ehrhart import fit_ehrhart_polynomial, limit_coefficient
from qvol.mpoly import MLaurent
from qvol.poset import Poset, linear_extensions, maj, maj_gf
from qvol.qalg import QRat
from qvol.qint import qint_order_polytope
from qvol.selberg import SelbergSpec, selberg_routes

one = MLaurent.const(1)

examples = {
    "vee": Poset(3, ((1, 3), (2, 3))),
    "zigzag": Poset(4, ((1, 2), (3, 2), (3, 4))),
    "2+2": Poset(4, ((1, 2), (3, 4))),
}
for name, P in examples.items():
    V = qint_order_polytope(one, P, method="direct")
    words = [("".join(map(str, w)), maj(w)) for w in linear_extensions(P)]
    print(f"{name:7s} V_q = {V}")
    print(f"        extensions {words}")
    assert V == QRat(maj_gf(P)) / qfact(P.n)

spec = SelbergSpec(n=2, alpha=2, beta=1, m=1)
for route, value in selberg_routes(spec).values.items():
    print(f"selberg {route:6s} {value}")

P = examples["vee"]
E = fit_ehrhart_polynomial(P)
for k, c in enumerate(E.coeffs):
    print(f"E_q coefficient of [m]^{k}: {c}")
print("limit of E(m)/[m]^n:", limit_coefficient(E))
