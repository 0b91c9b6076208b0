"""Persistence barcodes of action-filtered graphs and gradient-like foliations."""
from .barcode import (INF, Barcode, BarcodeError, Interval, barcode_equal, bottleneck_distance,
                      interval_distance, normalize)
from .beta_map import (bars_category0, bars_category1, bars_category2, bars_category3,
                       check_saddle_inequality, compute_B, explain)
from .cone import ConeInstance, check_cone_lemma
from .foliation import (FoliationCode, GeneratorParams, assign_actions, code_to_graph,
                        euler_characteristic, generate, builtin_example)
from .generic import (GenericInstance, build_complex, check_d_squared, compute_B_gen,
                      validate_generic)
from .graph import (ActionGraph, classify_vertex, components, d_value, genus, j_map, l_value,
                    sublevel, superlevel, validate)
from .persistence import (FilteredComplex, barcode_via_ranks, compute_barcode,
                          interval_sum_complex, q_dimension, rank_map)

__version__ = "0.1.0"
