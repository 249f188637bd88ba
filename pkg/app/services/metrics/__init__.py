"""Metriky: odhad Hausdorffovy vzdálenosti a experimentální mřížky."""
