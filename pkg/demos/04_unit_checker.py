"""Factor-equivalence checks for unit lattices from arithmetic profiles.

A profile lists, per conjugacy class of subgroups H, invariants of the
fixed field of H: class number h, its p-part h_p, number of roots of
unity w, the unit index lambda, and optionally an exact rational
surrogate R for the regulator.  The checks evaluate exact products over
each relation Theta = sum n_H * H:

  global criterion   prod (|H| h lambda / w)^{n_H} = 1
                     (unit lattice factor equivalent to the standard
                     lattice A),
  class-number gate  prod (h R / w)^{n_H} = 1
                     (consistency of the data itself),
  p-part criterion   v_p(C_Theta(units)) = v_p(C_Theta(candidate)),
  classical p-test   prod h_p^{n_H} * prod |H|^{n_H} = 1 on the classical
                     generating relations of a p-group.

Run:  python demos/04_unit_checker.py
"""

import json
import os
import tempfile
from fractions import Fraction

from factoreq import (
    ArithmeticProfile,
    ClassData,
    bouc_condition_check,
    brauer_kuroda_residual,
    elementary_abelian_group,
    minkowski_factor_check,
    relation_basis,
    unit_regulator_constant,
)
from factoreq.cli import run


def frs(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def main():
    e9 = elementary_abelian_group(3, 2)
    labels = [cls.label for cls in e9.subgroup_classes()]
    basis = relation_basis(e9)
    print("=" * 72)
    print(f"The global criterion on {e9.name}")
    print("=" * 72)
    print(f"\nrelation: {basis[0].describe()}")

    flat = ArithmeticProfile(
        e9, {lab: ClassData(h=1, w=2, lam=1) for lab in labels})
    verdict = minkowski_factor_check(flat, basis)
    print(f"\nall class numbers 1: residual {frs(verdict.residuals[0])} "
          f"-> overall {verdict.overall}")
    print("  (a genuine field with these invariants cannot have its unit")
    print("   lattice factor equivalent to the standard lattice)")

    patterned = {lab: ClassData(h=1, w=2, lam=1) for lab in labels}
    order3 = [cls.label for cls in e9.subgroup_classes() if cls.order == 3]
    for lab in order3[:2]:
        patterned[lab] = ClassData(h=3, w=2, lam=1)
    verdict = minkowski_factor_check(ArithmeticProfile(e9, patterned), basis)
    print(f"\nclass number 3 on two order-3 classes: residual "
          f"{frs(verdict.residuals[0])} -> overall {verdict.overall}")

    print("\n" + "=" * 72)
    print("Unit regulator constants and the class-number gate")
    print("=" * 72)
    with_r = ArithmeticProfile(
        e9, {lab: ClassData(h=9, w=2, lam=1, regulator=Fraction(2, 9))
             for lab in labels})
    print(f"\nh = 9, w = 2, R = 2/9 everywhere (h*R/w = 1 on every class):")
    print(f"  class-number residual: "
          f"{frs(brauer_kuroda_residual(with_r, basis[0]))} (consistent)")
    value = unit_regulator_constant(with_r, basis[0])
    print(f"  C_Theta(units) = C_Theta(Z) * prod (R/lambda)^(2 n_H) = "
          f"{frs(value.value)}")
    print(f"  valuations: {value.valuations}")

    print("\n" + "=" * 72)
    print("The classical p-group condition")
    print("=" * 72)
    hp_profile = ArithmeticProfile(
        e9, {lab: ClassData(h_p=1) for lab in labels}, p=3)
    verdict = bouc_condition_check(hp_profile)
    print(f"\nall h_p = 1: residual {frs(verdict.residuals[0])} "
          f"-> overall {verdict.overall}")
    print("  factor breakdown (base^exponent per class):")
    for label, base, exponent in verdict.explanations[0]:
        print(f"    {label}: {frs(base)}^{exponent}")

    print("\n" + "=" * 72)
    print("The same checks through the command line")
    print("=" * 72)
    profile_data = {
        "group": "elemab:3,2",
        "p": 3,
        "classes": [
            {"label": lab,
             "h": 3 if lab in order3[:2] else 1,
             "h_p": 3 if lab in order3[:2] else 1,
             "w": 2, "lambda": 1}
            for lab in labels
        ],
    }
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False,
                                     encoding="utf-8") as handle:
        json.dump(profile_data, handle, indent=2)
        path = handle.name
    try:
        print(f"\nprofile file {os.path.basename(path)}:")
        print(json.dumps(profile_data, indent=2))
        print("\nThe patterned class numbers satisfy the global and")
        print("classical criteria, but the 3-part of the unit constant is")
        print("3^2 while every standard tower candidate gives 3^-2, so the")
        print("p-part comparison fails with residual 3^4 = 81:")
        for argv in (["check-units", path],
                     ["check-units", path, "--p-part", "--candidate",
                      "tower:1"],
                     ["bouc", "--check", path]):
            print(f"\n$ factoreq {' '.join(argv)}")
            code = run(argv)
            print(f"(exit code {code})")
    finally:
        os.unlink(path)


if __name__ == "__main__":
    main()
