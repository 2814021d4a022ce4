#!/usr/bin/env python3
"""Generate the synthetic portrait corpus used by the tests.

Writes 112x112 P6 portraits plus matching landmark sidecars into
data/portraits/. The faces are procedural (no real biometric data), but they
keep the statistics the pipeline cares about: strong low-frequency dominance
with enough edge and texture energy in the mid bands to make the privacy
metrics meaningful.

Re-running the script reproduces the corpus byte for byte.
"""

import argparse
import math
import pathlib

import numpy as np

SIZE = 112


def write_ppm(path: pathlib.Path, rgb: np.ndarray) -> None:
    assert rgb.shape == (SIZE, SIZE, 3) and rgb.dtype == np.uint8
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (SIZE, SIZE))
        f.write(rgb.tobytes())


def ellipse(yy, xx, cx, cy, rx, ry):
    return ((xx - cx) / rx) ** 2 + ((yy - cy) / ry) ** 2


def draw_portrait(rng: np.random.Generator):
    yy, xx = np.mgrid[0:SIZE, 0:SIZE].astype(np.float64)
    img = np.zeros((SIZE, SIZE, 3))

    # Background: two-axis gradient with faint texture.
    base = rng.uniform(45, 90, size=3)
    slope = rng.uniform(-0.45, 0.45, size=(3, 2))
    for ch in range(3):
        img[:, :, ch] = base[ch] + slope[ch, 0] * yy + slope[ch, 1] * xx
    img += rng.normal(0, 2.5, size=img.shape)
    wall = 6 * np.sin(xx / rng.uniform(5, 9) + rng.uniform(0, 6))
    img += wall[:, :, None] * rng.uniform(0.2, 0.7, size=3)

    # Face geometry.
    cx = 56 + rng.uniform(-4, 4)
    cy = 58 + rng.uniform(-3, 3)
    rx = rng.uniform(34, 40)
    ry = rng.uniform(44, 50)

    # Clothing below the jaw.
    shoulder = cy + 0.78 * ry + rng.uniform(0, 6)
    cloth = rng.uniform(30, 160, size=3)
    stripe = 10 * np.sin(yy / rng.uniform(2.5, 5.0))
    mask = yy > shoulder
    for ch in range(3):
        img[:, :, ch] = np.where(mask, cloth[ch] + stripe * rng.uniform(0.2, 1.0), img[:, :, ch])

    # Hair: cap over the upper face with strand texture.
    hair_color = np.array([rng.uniform(25, 80), rng.uniform(18, 60), rng.uniform(12, 45)])
    hline = cy - ry * rng.uniform(0.28, 0.42) + 7 * np.sin(xx / rng.uniform(4, 8))
    hair_oval = ellipse(yy, xx, cx, cy - 0.1 * ry, rx * 1.18, ry * 0.95)
    strands = rng.uniform(8, 16) * np.sin(xx * rng.uniform(0.9, 1.6) + yy * 0.25)
    hair_mask = (hair_oval < 1.0) & (yy < hline)
    for ch in range(3):
        img[:, :, ch] = np.where(hair_mask, hair_color[ch] + strands * (0.4 + 0.2 * ch), img[:, :, ch])

    # Skin.
    skin = np.array([rng.uniform(165, 215), rng.uniform(120, 165), rng.uniform(95, 135)])
    face_mask = (ellipse(yy, xx, cx, cy, rx, ry) < 1.0) & ~hair_mask
    shade = rng.uniform(10, 22) * (xx - cx) / rx + rng.uniform(4, 10) * (yy - cy) / ry
    speckle = rng.normal(0, 3.5, size=(SIZE, SIZE))
    for ch in range(3):
        img[:, :, ch] = np.where(face_mask, skin[ch] + shade * (0.8 - 0.2 * ch) + speckle, img[:, :, ch])

    # Features, all placed relative to the face ellipse.
    eye_y = cy - 0.18 * ry
    eye_dx = 0.42 * rx
    eye_rx, eye_ry = 0.16 * rx, 0.07 * ry
    dark = np.array([40 + rng.uniform(-8, 8), 30 + rng.uniform(-6, 6), 26 + rng.uniform(-6, 6)])
    for side in (-1, 1):
        ex = cx + side * eye_dx
        sclera = ellipse(yy, xx, ex, eye_y, eye_rx, eye_ry) < 1.0
        iris = ellipse(yy, xx, ex, eye_y, eye_rx * 0.45, eye_ry * 0.9) < 1.0
        for ch in range(3):
            img[:, :, ch] = np.where(sclera, 225 - 10 * ch, img[:, :, ch])
            img[:, :, ch] = np.where(iris, dark[ch], img[:, :, ch])
        brow = (np.abs(yy - (eye_y - 0.11 * ry - 0.035 * ry * np.sin((xx - ex) / eye_rx))) < 1.6) & (
            np.abs(xx - ex) < eye_rx * 1.45
        )
        for ch in range(3):
            img[:, :, ch] = np.where(brow, dark[ch] * 0.9, img[:, :, ch])

    nose = (np.abs(xx - cx - 0.03 * rx * np.sin(yy / 6)) < 1.4) & (yy > eye_y) & (yy < cy + 0.28 * ry)
    for ch in range(3):
        img[:, :, ch] = np.where(nose, skin[ch] * 0.78, img[:, :, ch])

    mouth_y = cy + 0.45 * ry
    mouth = (ellipse(yy, xx, cx, mouth_y, 0.36 * rx, 0.07 * ry) < 1.0)
    lip = np.array([150 + rng.uniform(-20, 30), 60 + rng.uniform(-10, 20), 65 + rng.uniform(-10, 15)])
    for ch in range(3):
        img[:, :, ch] = np.where(mouth, lip[ch], img[:, :, ch])

    # Sensor noise keeps every frequency channel alive.
    img += rng.normal(0, 2.0, size=img.shape)
    rgb = np.clip(np.rint(img), 0, 255).astype(np.uint8)

    landmarks = make_landmarks(cx, cy, rx, ry, eye_y, eye_dx, eye_rx, eye_ry, mouth_y)
    return rgb, landmarks


def make_landmarks(cx, cy, rx, ry, eye_y, eye_dx, eye_rx, eye_ry, mouth_y):
    """98 points in the WFLW layout: contour, brows, nose, eyes, mouth, pupils."""
    pts = []
    # 0..32: jaw contour, ear level on the left around the chin to the right.
    for i in range(33):
        a = math.pi * i / 32.0
        x = cx - rx * math.cos(a)
        y = eye_y - 0.05 * ry + (cy + ry * 0.98 - eye_y + 0.05 * ry) * math.sin(a)
        pts.append((x, y))
    # 33..50: brows.
    for side in (-1, 1):
        ex = cx + side * eye_dx
        for i in range(9):
            t = (i - 4) / 4.0
            pts.append((ex + t * eye_rx * 1.45, eye_y - 0.11 * ry - 0.03 * ry * (1 - t * t)))
    # 51..59: nose bridge and base.
    for i in range(6):
        pts.append((cx, eye_y + (i / 5.0) * (cy + 0.28 * ry - eye_y)))
    pts.append((cx - 0.08 * rx, cy + 0.28 * ry))
    pts.append((cx, cy + 0.30 * ry))
    pts.append((cx + 0.08 * rx, cy + 0.28 * ry))
    # 60..75: eye rings, 8 points each.
    for side in (-1, 1):
        ex = cx + side * eye_dx
        for i in range(8):
            a = 2 * math.pi * i / 8.0
            pts.append((ex + eye_rx * math.cos(a), eye_y + eye_ry * math.sin(a)))
    # 76..95: mouth ring.
    for i in range(20):
        a = 2 * math.pi * i / 20.0
        pts.append((cx + 0.36 * rx * math.cos(a), mouth_y + 0.07 * ry * math.sin(a)))
    # 96..97: pupils.
    pts.append((cx - eye_dx, eye_y))
    pts.append((cx + eye_dx, eye_y))

    assert len(pts) == 98
    return pts


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/portraits", help="output directory")
    parser.add_argument("--count", type=int, default=6)
    parser.add_argument("--seed", type=int, default=20240811)
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    for i in range(args.count):
        rgb, landmarks = draw_portrait(rng)
        stem = f"portrait_{i:02d}"
        write_ppm(out / f"{stem}.ppm", rgb)
        with open(out / f"{stem}.landmarks.txt", "w") as f:
            for x, y in landmarks:
                f.write(f"{x:.3f} {y:.3f}\n")
        print(f"wrote {out / stem}.ppm (+landmarks)")


if __name__ == "__main__":
    main()
