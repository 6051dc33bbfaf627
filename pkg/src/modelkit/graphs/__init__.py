"""The category of finite graphs with loops."""
from __future__ import annotations

from .graph import (Graph, GraphError, all_graphs, all_graphs_upto, complete, cycle,
                    disjoint_union, empty, gnp, graph_corpus, looped_point, named_graph, path,
                    petersen, tensor_product)
from .hom import (GraphHom, count_homs, find_hom, find_hom_within, find_isomorphism, has_hom,
                  hom_equivalent, is_isomorphic, iter_homs)
from .core import BauslaughProfile, CoreResult, bauslaugh_profile, core, core_restart_stable, is_core
from .limits import (CoproductSplit, GraphCone, GraphDiagram, coproduct, coproduct_is_disjoint,
                     graph_colimit, graph_limit, product, pullback, pushout, split_over_coproduct)
from .model import (CocoreClassification, CoreClassification, FibStatus, LiftingFailure,
                    check_condition_b_pi0, classify_cocore_morphism, classify_core_morphism,
                    factor_acof_fib, factor_cof_afib, find_retraction, find_section,
                    is_component_inclusion)
