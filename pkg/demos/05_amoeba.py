"""Amoeba sampling: the log-modulus image of a kite curve in the torus."""

from pathlib import Path

from severi_census import LaurentPoly, amoeba_sample
from severi_census.render import amoeba_svg

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# z + 1/z + w + 1/w = 0: self-reciprocal, so the amoeba has both mirror
# symmetries u -> -u and v -> -v
p = LaurentPoly(1, 1, (1, 0, 1))
points = amoeba_sample(p, a=1, b=1, n_samples=4000, log_radius=(-2.5, 2.5))
print(f"sampled {len(points)} amoeba points")

csv_path = OUT / "amoeba.csv"
csv_path.write_text("u,v\n" + "".join(f"{u!r},{v!r}\n" for u, v in points))
svg_path = OUT / "amoeba.svg"
svg_path.write_text(amoeba_svg(points))
print("wrote", csv_path)
print("wrote", svg_path)

# a genus-2 window: the nodes and holes move with the coefficients
q = LaurentPoly(1, 2, (0.4, 1.5, -0.7, 1.0))
cloud = amoeba_sample(q, a=0.3, b=2.0, n_samples=4000, log_radius=(-3, 3))
(OUT / "amoeba_genus2.svg").write_text(amoeba_svg(cloud))
print(f"second cloud: {len(cloud)} points ->", OUT / "amoeba_genus2.svg")
