import math
import sys

import _conemink as cm


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol * max(1.0, abs(b)), (a, b)


def main():
    # exact 2D solve and measure roundtrip
    k = cm.solve2d(math.pi / 4, [(0.0, 2.0)])
    assert k.is_asymptotic()
    approx(k.support([1.0, 0.0]), -1.0, 1e-12)
    atoms = cm.surface_measure_atoms(k)
    assert len(atoms) == 1
    approx(atoms[0][1], 2.0, 1e-12)

    # chart solver on the same data
    cone = cm.Cone.make2d(math.pi / 4)
    k2 = cm.solve(cone, [([1.0, 0.0], 2.0)])
    approx(k2.support([1.0, 0.0]), -1.0, 1e-7)

    # measure-sum combination merges weights
    q = cm.blaschke_sum(cm.solve2d(math.pi / 4, [(0.0, 2.0)]),
                        cm.solve2d(math.pi / 4, [(0.0, 3.0)]))
    approx(cm.surface_measure_atoms(q)[0][1], 5.0, 1e-10)

    # closed forms
    approx(cm.a_set_mass(math.pi / 4, 1.0), math.pi, 1e-14)
    approx(cm.facet_ellipse_area(math.pi / 4), math.pi, 1e-14)

    # functionals
    approx(cm.j_functional([(0.2, 1.0), (0.4, 3.0)], 1.0), 1.4, 1e-13)

    # JSON roundtrip through the string API
    k3 = cm.pseudocone_from_json(k.to_json())
    approx(k3.support([1.0, 0.0]), -1.0, 1e-12)

    print("python smoke ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
