"""Gallery of complex-base attractor hulls.

For the maps x -> (x + digit)/z the hull geometry is fully explicit:
boundary length 2(n-1)/(|z|-1) independent of arg z, area given by a fast
series, and for arg z a rational multiple of pi an exact polygon with one
edge family per residue.  The demo prints the gallery table and renders
each hull with a sample cloud.

Run:  python3 demos/03_base_gallery.py
Output: demo_output/hull_*.svg
"""

import cmath
import math
import pathlib

import fractalhull as fh

OUT = pathlib.Path(__file__).resolve().parent / "demo_output"
OUT.mkdir(exist_ok=True)

GALLERY = [
    ("twindragon", 1 + 1j, 2),
    ("negatwin", -1 + 1j, 2),
    ("quartic", 2j, 4),
    ("hexagonal", 2 * cmath.exp(1j * math.pi / 3), 2),
    ("irrational", 1.9 * cmath.exp(1j * 1.0), 2),
    ("triadic", 1.5j, 3),
]

print(f"{'name':12}{'|z|':>7}{'arg z':>9}{'angle':>12}"
      f"{'vertices':>9}{'perimeter':>11}{'area':>9}")
for name, z, n in GALLERY:
    sys_ = fh.complex_base_system(z, n)
    if sys_.rational_angle is not None:
        polygon, _ = fh.exact_polygon(sys_)
        kind = "pi*%d/%d" % sys_.rational_angle
    else:
        polygon = fh.irrational_polygon(sys_, tol=1e-9)
        kind = "irrational"
    perimeter = fh.hull_perimeter(sys_)
    area = fh.hull_area(sys_, 1e-12)
    print(f"{name:12}{sys_.r:7.3f}{sys_.phi:9.4f}{kind:>12}"
          f"{len(polygon):9d}{perimeter:11.6f}{area:9.5f}")

    cloud = fh.chaos_game_sample(fh.complex_base_ifs(z, n), 3000, seed=2)
    (OUT / f"hull_{name}.svg").write_text(fh.render_svg(polygon, cloud.points))

print(f"\nSVGs written to {OUT}")
print("note the perimeter column: for fixed |z| and n it cannot depend on")
print("arg z, which the hexagonal/irrational rows (both |z|=2-ish) hint at.")
