"""Minimal static SVG 1.1 emission for histograms and CDF overlays."""

from __future__ import annotations

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 60, 20, 34, 46
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, n: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


class _Canvas:
    def __init__(self, xlim, ylim, title):
        self.xlim = xlim
        self.ylim = ylim
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>',
        ]

    def x(self, v: float) -> float:
        lo, hi = self.xlim
        span = (hi - lo) or 1.0
        return MARGIN_L + (v - lo) / span * (WIDTH - MARGIN_L - MARGIN_R)

    def y(self, v: float) -> float:
        lo, hi = self.ylim
        span = (hi - lo) or 1.0
        return HEIGHT - MARGIN_B - (v - lo) / span * (HEIGHT - MARGIN_T - MARGIN_B)

    def axes(self, xlabel: str, ylabel: str):
        x0, y0 = MARGIN_L, HEIGHT - MARGIN_B
        x1, y1 = WIDTH - MARGIN_R, MARGIN_T
        self.parts.append(
            f'<path d="M {x0} {y1} L {x0} {y0} L {x1} {y0}" '
            f'stroke="black" fill="none" stroke-width="1"/>'
        )
        for t in _ticks(*self.xlim):
            px = self.x(t)
            self.parts.append(
                f'<line x1="{_fmt(px)}" y1="{y0}" x2="{_fmt(px)}" y2="{y0 + 4}" stroke="black"/>'
                f'<text x="{_fmt(px)}" y="{y0 + 18}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="10">{t:.3g}</text>'
            )
        for t in _ticks(*self.ylim):
            py = self.y(t)
            self.parts.append(
                f'<line x1="{x0 - 4}" y1="{_fmt(py)}" x2="{x0}" y2="{_fmt(py)}" stroke="black"/>'
                f'<text x="{x0 - 8}" y="{_fmt(py + 3)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="10">{t:.3g}</text>'
            )
        self.parts.append(
            f'<text x="{(x0 + x1) / 2}" y="{HEIGHT - 8}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{xlabel}</text>'
            f'<text x="16" y="{(y0 + y1) / 2}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 16 {(y0 + y1) / 2})">{ylabel}</text>'
        )

    def polyline(self, xs, ys, color: str, label: str | None = None, index: int = 0):
        pts = " ".join(f"{_fmt(self.x(a))},{_fmt(self.y(b))}" for a, b in zip(xs, ys))
        self.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        if label:
            ly = MARGIN_T + 14 + 16 * index
            lx = WIDTH - MARGIN_R - 150
            self.parts.append(
                f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                f'stroke="{color}" stroke-width="1.5"/>'
                f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
                f'font-size="11">{label}</text>'
            )

    def bars(self, lefts, widths, heights, color: str):
        y0 = self.y(0.0)
        for left, w, h in zip(lefts, widths, heights):
            px = self.x(left)
            pw = self.x(left + w) - px
            py = self.y(h)
            self.parts.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(pw)}" '
                f'height="{_fmt(y0 - py)}" fill="{color}" fill-opacity="0.7" '
                f'stroke="white" stroke-width="0.5"/>'
            )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def cdf_chart(series, title: str, xlabel: str = "t", ylabel: str = "CDF") -> str:
    """Overlayed CDF polylines; series = [(xs, ys, label), ...]."""
    xs_all = [x for xs, _, _ in series for x in xs]
    canvas = _Canvas((min(xs_all), max(xs_all)), (0.0, 1.0), title)
    canvas.axes(xlabel, ylabel)
    for i, (xs, ys, label) in enumerate(series):
        canvas.polyline(xs, ys, COLORS[i % len(COLORS)], label, i)
    return canvas.render()


def histogram_chart(lefts, widths, heights, title: str,
                    xlabel: str = "bin", ylabel: str = "count") -> str:
    top = max(heights) if len(heights) else 1.0
    canvas = _Canvas(
        (min(lefts), max(l + w for l, w in zip(lefts, widths))),
        (0.0, top * 1.05),
        title,
    )
    canvas.axes(xlabel, ylabel)
    canvas.bars(lefts, widths, heights, COLORS[0])
    return canvas.render()
