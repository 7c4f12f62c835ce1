"""Compare the compiled and pure-Python enumeration kernels.

    python benchmarks/bench_enumeration.py [--sizes 4 6 7 8] [--repeat 3]
"""
import argparse
import time

from sixvertex.kernel import backends


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    kernels = backends()
    if "compiled" not in kernels:
        print("compiled kernel not built; only the python kernel is available")
    print(f"{'size':>4} {'sym':>5} " + " ".join(f"{k:>12}" for k in kernels) + "   speedup")
    for size in args.sizes:
        for sym in (False, True):
            if sym and size % 2:
                continue
            times, results = {}, {}
            for name, mod in kernels.items():
                times[name], results[name] = best_time(
                    lambda m=mod: m.type_histogram(size, sym), args.repeat)
            if len({tuple(sorted(r.items())) for r in results.values()}) != 1:
                raise SystemExit(f"kernels disagree at size={size} symmetric={sym}")
            speed = (f"{times['python'] / times['compiled']:8.1f}x" if "compiled" in times else "")
            print(f"{size:>4} {str(sym):>5} " + " ".join(f"{times[k]:11.4f}s" for k in kernels)
                  + "   " + speed)


if __name__ == "__main__":
    main()
