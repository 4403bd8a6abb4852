from __future__ import annotations

import io
from decimal import Decimal
from fractions import Fraction

import pytest

import polyiamond_bound as pb
from polyiamond_bound import recurrence
from polyiamond_bound.enumeration import CountTable

GHAT_EXPECTED = [1, 1, 2, 5, 13, 36, 104, 309, 939, 2905, 9118, 28964,
                 92940, 300808, 980864]
HHAT_EXPECTED = [1, 1, 2, 4, 10, 27, 76, 222, 666, 2039, 6346, 20018,
                 63856, 205636, 667616]
U_EXPECTED_13_20 = [2545656, 6356155, 22835854, 79910094, 204961458,
                    718063596, 16202332914, 47569983954]


def test_hat_prefixes(hat1000):
    assert list(hat1000.g_hat[:15]) == GHAT_EXPECTED
    assert list(hat1000.h_hat[:15]) == HHAT_EXPECTED
    assert list(hat1000.k_hat[:5]) == [1, 1, 1, 2, 5]


def test_khat_is_shifted_ghat(hat1000):
    assert hat1000.k_hat[0] == 1
    for n in range(1, 1001):
        assert hat1000.k_hat[n] == hat1000.g_hat[n - 1]


def test_hat_ordering(hat1000):
    for n in range(1, 1001):
        assert hat1000.g_hat[n] >= hat1000.h_hat[n] >= hat1000.k_hat[n] > 0


def test_hat_recompute_identical_and_chunked():
    a = pb.hat_sequences(300)
    b = pb.hat_sequences(300)
    assert a == b
    g, h = a.g_hat, a.h_hat
    n = 300
    chunked = sum(g[i] * h[n - 1 - i] for i in range(150)) + \
        sum(g[i] * h[n - 1 - i] for i in range(150, n))
    assert chunked == g[n]


def test_series_identities(hat1000):
    report = pb.verify_series_identities(hat1000, 1000)
    assert report["ok"] and report["failures"] == []
    assert report["order"] == 1000


def test_series_identity_hand_example(hat1000):
    # order 4 of the eliminated identity: z_m = Ghat_{m-1}, and
    # Ghat_4 = z_4 + [x^4]z^2 + [x^4]z^3 = 5 + (2*1*2 + 1*1) + 3 = 13
    z = [0] + list(hat1000.g_hat[:10])
    z2_4 = sum(z[i] * z[4 - i] for i in range(5))
    z3_4 = sum(z[i] * z[j] * z[4 - i - j]
               for i in range(5) for j in range(5 - i))
    assert z2_4 == 5 and z3_4 == 3
    assert hat1000.g_hat[4] == z[4] + z2_4 + z3_4 == 13


def test_series_identities_detect_corruption(hat1000):
    g = list(hat1000.g_hat[:21])
    g[20] += 1
    corrupted = recurrence.BoundSequences(tuple(g), hat1000.h_hat[:21],
                                          hat1000.k_hat[:21])
    report = pb.verify_series_identities(corrupted, 20)
    assert not report["ok"]
    assert any(f["n"] == 20 for f in report["failures"])
    identities = {f["identity"] for f in report["failures"]}
    assert "g = 1 + x*g*h" in identities


def test_dominance(marked12, hat1000):
    rows = pb.dominance_check(marked12["g"], marked12["h"], marked12["k"], hat1000)
    assert len(rows) == 13
    assert all(r["g_ok"] and r["h_ok"] and r["k_ok"] for r in rows)
    assert rows[0]["g"] == rows[0]["g_hat"] == 1


def test_u_sequence_validation(t_tri12):
    with pytest.raises(ValueError):
        pb.u_sequence(t_tri12, 1, 10)
    with pytest.raises(ValueError):
        pb.u_sequence(t_tri12, 13, 20)
    with pytest.raises(ValueError):
        pb.u_sequence(t_tri12, 12, 11)


def test_u_sequence_seed_prefix_and_values(t_tri12):
    hybrid = pb.u_sequence(t_tri12, 12, 20)
    assert hybrid.cutoff == 12
    assert list(hybrid.values[1:13]) == list(t_tri12.values[1:13])
    assert list(hybrid.values[13:]) == U_EXPECTED_13_20


def test_u11_dual_implementation(t_tri12):
    seed = CountTable(pb.TRIANGLE, t_tri12.values[:11], "redelmeier")
    hybrid = pb.u_sequence(seed, 10, 11)
    # independent re-derivation in scaled integer arithmetic: 4*U(11) is
    # an exact integer sum, and the floor is one integer division
    u = seed.values
    scaled = sum((k + 2) * (11 - k + 2) * u[k] * u[11 - k] for k in range(4, 8))
    assert hybrid.values[11] == scaled // 4


def test_u_even_term_hand_recomputation(t_tri12):
    hybrid = pb.u_sequence(t_tri12, 12, 14)
    u = hybrid.values
    total = Fraction(0)
    for k in range(5, 10):          # ceil(13/3) .. floor(29/3)
        total += Fraction((k + 2) * (14 - k + 2), 4) * u[k] * u[14 - k]
    total += Fraction(9 ** 2, 4) * u[7]
    assert u[14] == total.numerator // total.denominator


def test_u_rows_and_csv(t_tri12):
    hybrid = pb.u_sequence(t_tri12, 12, 16)
    rows = recurrence.u_rows(hybrid)
    assert rows[0] == [1, 2, ""]
    assert rows[-1][0] == 16 and rows[-1][1] == hybrid.values[16]
    ratio = Decimal(rows[-1][2])
    exact = Fraction(hybrid.values[16], hybrid.values[15])
    assert abs(Fraction(str(ratio)) - exact) < Fraction(1, 10 ** 15)
    buf = io.StringIO()
    pb.write_u_csv(hybrid, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "n,U,ratio"
    assert lines[1] == "1,2,"
    assert len(lines) == 17


def test_hat_csv(hat1000):
    small = pb.hat_sequences(5)
    buf = io.StringIO()
    pb.write_hat_csv(small, buf)
    assert buf.getvalue().splitlines() == [
        "n,G_hat,H_hat,K_hat",
        "0,1,1,1",
        "1,1,1,1",
        "2,2,2,1",
        "3,5,4,2",
        "4,13,10,5",
        "5,36,27,13",
    ]
    assert small.g_hat == hat1000.g_hat[:6]


def test_ghat_ratios_nondecreasing_and_bounded(hat1000):
    g = hat1000.g_hat
    lam = pb.lambda_upper(pb.solve_cubic_newton())
    for n in range(1, 1000):
        assert g[n + 1] * g[n - 1] >= g[n] ** 2
    assert Fraction(g[1000], g[999]) <= Fraction(lam) + Fraction(1, 10 ** 9)


def test_hat_sequences_validation():
    with pytest.raises(ValueError):
        pb.hat_sequences(-1)
    tiny = pb.hat_sequences(0)
    assert tiny.g_hat == (1,) and tiny.n_max == 0
