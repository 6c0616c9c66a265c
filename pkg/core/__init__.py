"""Exact arithmetic shared by all zlift modules"""

from core.partitions import (
    Partition, partitions_of, partition_stats, partition_count,
    colored_partition_count, partition_product_check
)
from core.lattice import IntLatticeBasis, RationalLattice, IntegerSystem, lattice_from_generators
from core.symmetric import h_from_p, p_from_h, h_sequence

__all__ = [
    'Partition',
    'partitions_of',
    'partition_stats',
    'partition_count',
    'colored_partition_count',
    'partition_product_check',
    'IntLatticeBasis',
    'RationalLattice',
    'IntegerSystem',
    'lattice_from_generators',
    'h_from_p',
    'p_from_h',
    'h_sequence',
]
