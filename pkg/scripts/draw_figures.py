"""Write the standard drawings (depth circles, a packing, epsilon circles) as SVG and CSV."""
import argparse
from pathlib import Path

from apollonian.geometry import max_epsilon, render_depth_circles, render_epsilon_circles, render_packing


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    s1 = (7, 4, -2, 4)
    scenes = {
        "depth_circles_0": render_depth_circles(0),
        "depth_circles_2": render_depth_circles(2),
        "packing_-7_12_17_20": render_packing((-7, 12, 17, 20), 300),
        "epsilon_S1": render_epsilon_circles(s1, [max_epsilon(s1), 0.04, 0.01]),
    }
    for name, scene in scenes.items():
        (out / f"{name}.svg").write_text(scene.to_svg(), encoding="utf-8")
        (out / f"{name}.csv").write_text(scene.to_csv(), encoding="utf-8")
        print(f"wrote {out / name}.svg ({len(scene.circles)} circles)")


if __name__ == "__main__":
    main()
