"""Toolkit for eliciting, validating and analyzing causal cognitive maps of
software-engineering success beliefs: pairwise map distances, latent class
and hierarchical clustering, robust-cluster combination, Kuhn stage
classification, popularity/influence statistics and entropy-weighted
consensus graphs."""

__version__ = "0.1.0"

from .belief import (BeliefScore, ConsensusGraph, WeightRange, belief_function,
                     belief_score, build_consensus, edge_ranges, entropy_weight)
from .distance import (DistanceMatrix, ElementPartition, capped_entry,
                       distance_matrix, lsw, partition_elements)
from .errors import (CogmapError, GenerationError, MapFormatError,
                     MapValidationError, NumericalError)
from .hac import ClusterSet, Dendrogram, build_dendrogram, cut, extend_clusters
from .lca import (Assignment, FeatureMatrix, LcaModel, SelectionResult, assign,
                  features, fit_em, select_classes)
from .maps import (CausalMap, Edge, Node, SignedMatrix, ValidationReport,
                   adjacency, build_map, load_dataset, load_map, parse_map,
                   save_map, serialize_map, validate)
from .pipeline import (ClusterAnalysis, KuhnVerdict, RobustClusters,
                       analyze_clusters, classify_stage, combine)
from .stats import (InfluenceVector, NormalizedWeights, aggregate_influence,
                    construct_frequency, normalize_weights,
                    relationship_frequency, transitive_influence)
from .synthetic import (GeneratedPopulation, PopulationSpec, Prototype,
                        binary_sampler, generate, random_map)
from .vocabulary import CANONICAL_CONSTRUCTS, CANONICAL_IDS, SES_ID, Construct
