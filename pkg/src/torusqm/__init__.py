"""Exact counts of torus covers, their graph sums, and quasimodular fits."""

from .elliptic import constant_term_graph, fourier_expansion, laurent_expansion, zeta0_Z_power
from .graphs import GlobalGraph, assemble_total, enumerate_graphs, graph_sum_S, orientations, parse_graph
from .hurwitz import brute_force_n, n_connected_series, n_prime_series, n_series
from .partitions import parse_profile
from .quasimodular import QMPoly, eisenstein_series, fit_quasimodular, min_fit_order, parse_qmpoly, sigma_series
from .series import QSeries, dq, partition_gf, series_div, series_mul
from .siegel_veech import c_connected_series, c_prime_series, c_series
from .triple import a_number, a_prime, abar_prime, ssz_poly_fit

__version__ = "0.1.0"
