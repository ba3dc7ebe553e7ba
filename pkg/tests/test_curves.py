import pytest

from yoshida.curves import WeierstrassCurve, ap_table, count_ap, discriminant, load_coeffs, write_coeffs
from yoshida.errors import AdditiveReductionError, ValidationError
from yoshida.primes import primes_up_to
from tests.conftest import CURVE_11A, CURVE_33A


def ap_character_sum(curve, p):
    """Independent oracle for good odd p > 3: short-Weierstrass transform
    y^2 = x^3 - 27 c4 x - 54 c6, then a_p = -sum_x chi(x^3 + A x + B) with the
    Legendre symbol computed by Euler's criterion."""
    b2, b4, b6, _ = curve.b_invariants()
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    A = (-27 * c4) % p
    B = (-54 * c6) % p

    def chi(t):
        t %= p
        if t == 0:
            return 0
        e = pow(t, (p - 1) // 2, p)
        return 1 if e == 1 else -1

    return -sum(chi(x * x * x + A * x + B) for x in range(p))


def test_discriminant_examples():
    assert discriminant(CURVE_11A) == -11
    assert discriminant(WeierstrassCurve(0, 0, 1, -1, 0)) == 37
    assert discriminant(CURVE_33A) == 3**6 * 11**2


def test_singular_curve_rejected():
    with pytest.raises(ValidationError, match="singular"):
        WeierstrassCurve(0, 0, 0, 0, 0)


def test_discriminant_wide_integers():
    # coefficients near 2^32 must not overflow anywhere
    c = WeierstrassCurve(2**32, -(2**32), 2**32, -(2**32), 2**32)
    d = discriminant(c)
    assert isinstance(d, int) and d != 0


def test_count_ap_examples():
    assert count_ap(CURVE_11A, 2) == -2
    assert count_ap(CURVE_11A, 3) == -1
    assert count_ap(CURVE_11A, 5) == 1


def test_count_ap_brute_vs_fast_small():
    # the p<=3 brute path and the squares-table path must agree where both run
    for curve in (CURVE_11A, CURVE_33A, WeierstrassCurve(0, 0, 1, -1, 0)):
        for p in (5, 7, 13):
            from yoshida.curves import _count_affine_brute, _count_affine_fast
            assert _count_affine_brute(curve, p) == _count_affine_fast(curve, p)


def test_count_ap_character_sum_oracle():
    # dual-route check for 3 < p <= 50 at good primes
    for curve in (CURVE_11A, CURVE_33A, WeierstrassCurve(0, 0, 1, -1, 0)):
        d = discriminant(curve)
        for p in primes_up_to(50).tolist():
            if p <= 3 or d % p == 0:
                continue
            assert count_ap(curve, p) == ap_character_sum(curve, p), (curve, p)


def test_multiplicative_primes():
    assert count_ap(CURVE_11A, 11) == 1
    assert count_ap(CURVE_33A, 3) == -1
    assert count_ap(CURVE_33A, 11) == 1


def test_additive_reduction_rejected():
    # y^2 = x^3 - 5^2 x has additive reduction at 5 (cusp ... a cusp at p=5)
    c = WeierstrassCurve(0, 0, 0, 5, 0)  # disc = -64*125, additive at 5
    with pytest.raises(AdditiveReductionError) as exc:
        count_ap(c, 5)
    assert exc.value.p == 5


def test_hasse_bound_up_to_1e4(table_11a):
    for p, a in table_11a.coeffs.items():
        if 11 % p != 0:
            assert a * a <= 4 * p


def test_ap_table_partition_determinism():
    t1 = ap_table(CURVE_11A, 500, threads=1)
    t4 = ap_table(CURVE_11A, 500, threads=4)
    assert t1.coeffs == t4.coeffs
    assert list(t1.coeffs.keys()) == primes_up_to(500).tolist()


def test_ap_table_empty_below_first_prime():
    t = ap_table(CURVE_11A, 1)
    assert t.coeffs == {}


def test_ap_table_level_defaults_to_disc_with_warning():
    c = WeierstrassCurve(0, -1, 1, 0, 0)
    with pytest.warns(UserWarning, match="discriminant"):
        t = ap_table(c, 10)
    assert t.level == 11


def test_ap_table_propagates_additive_error():
    c = WeierstrassCurve(0, 0, 0, 5, 0, declared_level=10)
    with pytest.raises(AdditiveReductionError):
        ap_table(c, 10)


# ---------------------------------------------------------------------------
# coefficient files
# ---------------------------------------------------------------------------

def test_load_coeffs_roundtrip(tmp_path, table_33a):
    path = tmp_path / "g.txt"
    write_coeffs(table_33a, path)
    back = load_coeffs(path)
    assert back.coeffs == table_33a.coeffs
    assert (back.level, back.weight, back.normalized) == (33, 2, False)


def test_load_coeffs_normalized_roundtrip(tmp_path):
    from yoshida.hecke import NewformCoeffs
    nf = NewformCoeffs(level=11, weight=2, coeffs={2: -0.5, 3: 0.25}, normalized=True)
    path = tmp_path / "n.txt"
    write_coeffs(nf, path)
    back = load_coeffs(path)
    assert back.normalized and back.coeffs == nf.coeffs


def test_load_coeffs_simple(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("# level=11 weight=2\n2 -2\n3 -1\n5 1\n")
    nf = load_coeffs(path)
    assert nf.coeffs == {2: -2, 3: -1, 5: 1}


def test_load_coeffs_nonprime_line(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("# level=11 weight=2\n2 1\n4 7\n")
    with pytest.raises(ValidationError, match=r"4 is not prime \(line 3\)"):
        load_coeffs(path)


def test_load_coeffs_deligne(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("# level=11 weight=2\n2 5\n")
    with pytest.raises(ValidationError, match="Deligne bound violated at p=2"):
        load_coeffs(path)


def test_load_coeffs_missing_header(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("2 1\n3 1\n")
    with pytest.raises(ValidationError, match="header"):
        load_coeffs(path)
    path.write_text("# level=11\n2 1\n")
    with pytest.raises(ValidationError, match="weight"):
        load_coeffs(path)


def test_load_coeffs_comments_and_overrides(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("# level=11 weight=2\n# a comment\n2 -2  # trailing\n\n3 -1\n")
    nf = load_coeffs(path, level=33)
    assert nf.level == 33 and nf.coeffs == {2: -2, 3: -1}


def test_load_coeffs_descending_rejected(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("# level=11 weight=2\n3 1\n2 1\n")
    with pytest.raises(ValidationError, match="ascending"):
        load_coeffs(path)
