"""Minimal self-contained SVG scatter/whisker plots.

Static markup only: median points, 90-percent whisker bars, and an
optional theory polyline.  Good enough for eyeballing parity with the
reference figures; the CSV output is the contract.
"""

WIDTH, HEIGHT = 640, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 55


def _ticks(lo, hi, n=6):
    import math
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 2.5, 5, 10):
        if raw <= m * mag:
            step = m * mag
            break
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def write_svg(path, points, theory=None, title="", xlabel="", ylabel=""):
    """points: list of (x, median, q05, q95); theory: list of (x, y) or None."""
    xs = [p[0] for p in points] + [t[0] for t in (theory or [])]
    ys = []
    for _, med, lo, hi in points:
        ys += [med, lo, hi]
    ys += [t[1] for t in (theory or [])]
    ys = [y for y in ys if y == y]  # drop NaN
    if not xs or not ys:
        raise ValueError("nothing to plot")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    pad = 0.05 * (y1 - y0) or 0.05
    y0, y1 = y0 - pad, y1 + pad

    iw = WIDTH - MARGIN_L - MARGIN_R
    ih = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + (x - x0) / (x1 - x0) * iw

    def py(y):
        return MARGIN_T + (y1 - y) / (y1 - y0) * ih

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
           f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" '
           f'font-size="15">{title}</text>']
    # axes and ticks
    out.append(f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{iw}" height="{ih}" '
               'fill="none" stroke="black"/>')
    for t in _ticks(x0, x1):
        if x0 <= t <= x1:
            out.append(f'<line x1="{px(t):.1f}" y1="{MARGIN_T + ih}" '
                       f'x2="{px(t):.1f}" y2="{MARGIN_T + ih + 5}" stroke="black"/>')
            out.append(f'<text x="{px(t):.1f}" y="{MARGIN_T + ih + 20}" '
                       f'text-anchor="middle" font-size="11">{t:g}</text>')
    for t in _ticks(y0, y1):
        if y0 <= t <= y1:
            out.append(f'<line x1="{MARGIN_L - 5}" y1="{py(t):.1f}" '
                       f'x2="{MARGIN_L}" y2="{py(t):.1f}" stroke="black"/>')
            out.append(f'<text x="{MARGIN_L - 8}" y="{py(t):.1f}" dy="4" '
                       f'text-anchor="end" font-size="11">{t:g}</text>')
    out.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" text-anchor="middle" '
               f'font-size="13">{xlabel}</text>')
    out.append(f'<text x="18" y="{HEIGHT / 2}" text-anchor="middle" font-size="13" '
               f'transform="rotate(-90 18 {HEIGHT / 2})">{ylabel}</text>')
    # theory polyline first so data sits on top
    if theory:
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in theory if y == y)
        out.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" '
                   'stroke-width="1.5"/>')
    for x, med, lo, hi in points:
        if med != med:
            continue
        out.append(f'<line x1="{px(x):.2f}" y1="{py(lo):.2f}" '
                   f'x2="{px(x):.2f}" y2="{py(hi):.2f}" stroke="#d62728"/>')
        for y in (lo, hi):
            out.append(f'<line x1="{px(x) - 4:.2f}" y1="{py(y):.2f}" '
                       f'x2="{px(x) + 4:.2f}" y2="{py(y):.2f}" stroke="#d62728"/>')
        out.append(f'<circle cx="{px(x):.2f}" cy="{py(med):.2f}" r="3.5" '
                   'fill="#d62728"/>')
    out.append('</svg>')
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")
