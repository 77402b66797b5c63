"""Print the stair table (default: stairs with t <= 50) and the accumulated mass."""
import argparse

from apollonian.staircase import build_staircase


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-max", type=int, default=50)
    args = ap.parse_args()
    model = build_staircase(args.t_max)
    print(f"{'word':<24}{'t':>6}{'width':>15}{'height':>15}{'d_W':>15}{'kind':>8}")
    for s in model.stairs:
        print(f"{';'.join(s.words):<24}{s.t:>6}{s.width:>15.10f}{s.height:>15.10f}{s.mass:>15.10f}{s.kind.value:>8}")
    print(f"mass = {model.mass:.10f} over {len(model.stairs)} stairs")


if __name__ == "__main__":
    main()
