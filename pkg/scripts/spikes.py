"""Bottom-stair multiplicities T(n, -c) near predicted spike positions."""
import argparse
import random
import statistics

from apollonian.tangency import predict_spikes, rmc0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int, nargs="*", default=[25947, 10007])
    ap.add_argument("--sample", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for n in args.n:
        mult = rmc0(n)
        rep = predict_spikes(n)
        print(f"n={n}: global mean T = {statistics.fmean(mult):.4f}, total = {sum(mult)}")
        if not rep.rows:
            print("  no spikes predicted")
            continue
        flagged = {c for p in rep.primes for c in rep.positions(p)}
        rest = [c for c in range(n) if c not in flagged]
        sample = random.Random(args.seed).sample(rest, min(args.sample, len(rest)))
        base = statistics.fmean(mult[c] for c in sample)
        for p in rep.primes:
            pos = rep.positions(p)
            m = statistics.fmean(mult[c] for c in pos)
            print(f"  p={p}: {len(pos)} positions, mean T = {m:.3f} ({m / base:.1f}x the non-spike sample)")


if __name__ == "__main__":
    main()
