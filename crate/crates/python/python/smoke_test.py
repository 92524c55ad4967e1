"""Quick checks of the extension module. Run after `maturin develop`."""

import gtperm_py as gp

TETRAHEDRON = """darts 12
(1,2,3)(4,5,6)(7,8,9)(10,11,12)
(1,4)(2,10)(3,7)(5,9)(6,11)(8,12)
"""


def main():
    g = gp.Group("psl2:7")
    assert g.order == 168 and g.degree == 8, g

    rep = g.sg_report()
    assert rep["schema"] == 1
    assert rep["pairs"]["ell"] == 114
    assert rep["sg"]["order_decimal"] == "512"
    assert rep["sg"]["consistent_with_c2_d8"] == [3, 2]

    d9 = gp.Group("dihedral:9")
    assert d9.gt1_order() == 2 == gp.dihedral_closed_form(9)
    assert gp.Group("dihedral:5").model_group() == (500, 3)
    assert gp.Group("cyclic:5").gt_full_order() == 4

    info = gp.analyze_dessin_text(TETRAHEDRON)
    assert info["monodromy_order"] == 12 and info["regular"]
    assert len(gp.cyclic_structure_classes(TETRAHEDRON, 3)) == 3

    try:
        gp.Group("psl2:6")
    except ValueError:
        pass
    else:
        raise AssertionError("unsupported spec accepted")

    try:
        gp.Group("psl2:7").gt1_order(cap=1000)
    except RuntimeError as e:
        assert "--cap" in str(e)
    else:
        raise AssertionError("cap not enforced")

    print("smoke test ok")


if __name__ == "__main__":
    main()
