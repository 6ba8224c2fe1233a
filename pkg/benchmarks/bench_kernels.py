"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py --scan-hi 200000 --repeat 3
"""
import argparse
import json
import time

from collatz_poly import _kernels
from collatz_poly.polynomial import build
from collatz_poly.roots import find_roots


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def cases(args):
    p_plain = build(args.roots_N)
    p_big = build(args.comp_N)
    return {
        f"scan minus-one [1, {args.scan_hi}]":
            lambda k: k.scan(1, args.scan_hi + 1, 1, k.MINUS_ONE),
        f"scan minus-two [1, {args.scan_hi}]":
            lambda k: k.scan(1, args.scan_hi + 1, 1, k.MINUS_TWO),
        f"roots P_{args.roots_N} (degree {p_plain.degree})":
            lambda k: find_roots(p_plain, backend=k, compensated=False).max_modulus,
        f"roots P_{args.comp_N} compensated (degree {p_big.degree})":
            lambda k: find_roots(p_big, backend=k, compensated=True).max_modulus,
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--scan-hi", type=int, default=100_000)
    ap.add_argument("--roots-N", type=int, default=703)
    ap.add_argument("--comp-N", type=int, default=27)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    backends = _kernels.backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend will be timed")
    rows = []
    for name, fn in cases(args).items():
        row = {"case": name}
        results = {}
        for label, kern in sorted(backends.items()):
            row[label], results[label] = best_of(lambda: fn(kern), args.repeat)
        if len(results) == 2:
            a, b = results.values()
            row["agree"] = a == b if not isinstance(a, float) else abs(a - b) <= 1e-9 * abs(a)
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    width = max(len(r["case"]) for r in rows)
    print(f"{'case':<{width}}  {'python':>9}  {'cython':>9}  {'speedup':>8}  agree")
    for r in rows:
        cy = f"{r['cython']:9.4f}" if "cython" in r else f"{'-':>9}"
        sp = f"{r['speedup']:7.1f}x" if "speedup" in r else f"{'-':>8}"
        print(f"{r['case']:<{width}}  {r['python']:9.4f}  {cy}  {sp}  {r.get('agree', '-')}")


if __name__ == "__main__":
    main()
