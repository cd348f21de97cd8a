from composed_factor.bench import (
    BenchRow,
    backend_compare,
    bench_ns,
    default_prime,
    format_table,
    monotone_advantage,
    run_bench,
)
from composed_factor.grid import field_for

from conftest import P


def test_default_prime_and_ns(F11, cubic14):
    x1 = P(F11, 10, 1)
    assert default_prime(x1) == 5
    assert bench_ns(x1, 3125) == [5, 25, 125, 625, 3125]
    assert default_prime(cubic14) == 5
    assert default_prime(P(field_for(2), 1, 1)) == 3
    assert bench_ns(cubic14, 100, p=3) == [3, 9, 27, 81]


def test_row_cells_and_lower_bound():
    done = BenchRow(11, 1, 25, 2.0, 50.0, 1000.0, 25)
    cut = BenchRow(11, 1, 125, 4.0, None, 1000.0, 125)
    assert done.speedup == 25.0 and not done.lower_bound
    assert cut.lower_bound and cut.cells()[4:] == [">1000", ">=250.0"]
    assert monotone_advantage([done, cut])
    assert not monotone_advantage([cut, done])
    table = format_table(["q", "deg_f", "n", "closed_ms", "oracle_ms", "speedup"], [done, cut])
    assert len(table.splitlines()) == 3


def test_run_bench_small(F11):
    rows = run_bench(P(F11, 10, 1), [5, 25], timeout=60)
    assert [r.count for r in rows] == [5, 9]
    assert all(r.oracle_ms is not None for r in rows)


def test_backend_compare_shape():
    rows = backend_compare(sizes=(16,), repeat=1)
    assert [r[0] for r in rows] == ["mul", "rem", "gcd", "powmod"]
