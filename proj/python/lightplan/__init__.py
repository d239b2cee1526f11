"""Survivable optical network design: optical-bypass vs optical-processing.

Thin wrapper over the C++ core. The main entry points are
:func:`builtin_topology`, :func:`generate_traffic`, :func:`solve` and
:func:`run_study`.
"""

from lightplan._core import (
    Demand,
    DemandSet,
    DesignError,
    Solution,
    StudyResult,
    StudyRow,
    Topology,
    TransceiverTable,
    builtin_topology,
    builtin_topology_names,
    demandset_from_json,
    disjoint_pairs,
    generate_traffic,
    k_shortest_paths,
    load_topology,
    load_topology_file,
    load_transceiver_table,
    load_transceiver_table_file,
    run_study,
    solve,
)

__all__ = [
    "Demand",
    "DemandSet",
    "DesignError",
    "Solution",
    "StudyResult",
    "StudyRow",
    "Topology",
    "TransceiverTable",
    "builtin_topology",
    "builtin_topology_names",
    "demandset_from_json",
    "disjoint_pairs",
    "generate_traffic",
    "k_shortest_paths",
    "load_topology",
    "load_topology_file",
    "load_transceiver_table",
    "load_transceiver_table_file",
    "run_study",
    "solve",
]

__version__ = "0.1.0"
