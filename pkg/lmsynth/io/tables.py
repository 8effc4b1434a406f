# -*- coding: utf-8 -*-

"""
The :mod:`lmsynth.io.tables` module writes the tables produced by the
package as CSV files: training histories, pose statistics, eligibility
tables and CSIM histograms. The first line of each file is a comment
holding the JSON header of the table (format, version and configuration).

CSIM histograms can also be drawn as SVG bar charts.
"""

import csv
import json

_COLORS = ("#4c72b0", "#dd8452", "#55a868", "#c44e52")


def write_csv(filename, rows, columns, header=None):
    """Writes rows to a CSV file.

    :param filename: the name of the file.
    :param rows: an iterable of dicts.
    :param columns: the keys written, in order.
    :param header: an optional JSON-serializable header, written on a first
        line starting with ``#``.
    """
    with open(filename, "w", newline="", encoding="utf-8") as output:
        if header is not None:
            output.write("# {}\n".format(json.dumps(header, sort_keys=True)))
        writer = csv.DictWriter(output, fieldnames=list(columns),
                                extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def read_csv(filename):
    """Reads a CSV file written by :func:`write_csv`.

    :returns: a tuple ``(header, rows)``, where ``header`` is the JSON header
        (or ``None``) and ``rows`` a list of dicts of strings.
    """
    with open(filename, "r", newline="", encoding="utf-8") as table:
        lines = table.read().splitlines()
    header = None
    if lines and lines[0].startswith("#"):
        header = json.loads(lines[0][1:])
        lines = lines[1:]
    return header, list(csv.DictReader(lines))


def stats_rows(stats):
    """Returns the rows ``(id, yaw_range, pitch_range)`` of a list of
    :class:`~lmsynth.curriculum.IdentityPoseStats`."""
    return [{"id": s.identity, "yaw_range": s.yaw_range,
             "pitch_range": s.pitch_range} for s in stats]


def histogram_rows(histograms):
    """Returns the rows of CSIM histograms.

    :param histograms: a mapping from method names to
        :class:`~lmsynth.metrics.histogram.Histogram` objects (or to dicts
        with ``edges`` and ``counts`` lists) with the same bins.
    :returns: a list of dicts with the keys ``bin_start``, ``bin_end`` and
        one count per method.
    """
    histograms = {method: _as_pair(histogram)
                  for method, histogram in histograms.items()}
    edges = next(iter(histograms.values()))[0]
    rows = []
    for i in range(len(edges) - 1):
        row = {"bin_start": edges[i], "bin_end": edges[i + 1]}
        for method, (_, counts) in histograms.items():
            row[method] = counts[i]
        rows.append(row)
    return rows


def _as_pair(histogram):
    if isinstance(histogram, dict):
        return list(histogram["edges"]), list(histogram["counts"])
    return list(histogram.edges), list(histogram.counts)


def histogram_svg(histograms, width=480, height=240, title=None):
    """Returns an SVG bar chart of CSIM histograms, the bars of the methods
    side by side in each bin.

    :param histograms: a mapping from method names to histograms (see
        :func:`histogram_rows`).
    :returns: a string.
    """
    # pylint: disable=too-many-locals
    histograms = [(method, _as_pair(histogram))
                  for method, histogram in histograms.items()]
    edges = histograms[0][1][0]
    n_bins = len(edges) - 1
    top = max(1, max(max(counts) for _, (_, counts) in histograms))
    margin = 24
    plot_width = width - 2 * margin
    plot_height = height - 2 * margin
    bar_width = plot_width / float(n_bins * len(histograms))

    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" width="{}" '
             'height="{}">'.format(width, height),
             '<rect width="100%" height="100%" fill="white"/>']
    if title:
        lines.append('<text x="{}" y="16" font-size="12">{}</text>'.format(
            margin, title))
    for m, (method, (_, counts)) in enumerate(histograms):
        color = _COLORS[m % len(_COLORS)]
        for i, count in enumerate(counts):
            bar_height = plot_height * count / float(top)
            x = margin + (i * len(histograms) + m) * bar_width
            lines.append('<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" '
                         'height="{:.2f}" fill="{}"><title>{} [{:.2f}, '
                         '{:.2f}): {}</title></rect>'.format(
                             x, height - margin - bar_height, bar_width,
                             bar_height, color, method, edges[i],
                             edges[i + 1], count))
        lines.append('<text x="{}" y="{}" font-size="10" fill="{}">{}'
                     '</text>'.format(width - margin - 60,
                                      margin + 12 * (m + 1), color, method))
    lines.append('<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" '
                 'stroke="black"/>'.format(margin, height - margin,
                                           width - margin))
    for value in (-1.0, 0.0, 1.0):
        x = margin + plot_width * (value + 1) / 2
        lines.append('<text x="{:.2f}" y="{}" font-size="10" '
                     'text-anchor="middle">{:g}</text>'.format(
                         x, height - margin + 14, value))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_histogram_svg(filename, histograms, **kwargs):
    """Writes the SVG bar chart of CSIM histograms (see
    :func:`histogram_svg`)."""
    with open(filename, "w", encoding="utf-8") as output:
        output.write(histogram_svg(histograms, **kwargs))
