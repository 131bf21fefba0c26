from .zonotope_io import parse_zonotopes, read_zonotope_file, serialize_zonotopes, write_zonotope_file
from .zonotopes import (
    DirectionIndex,
    ZonotopeSystem,
    canonical_direction,
    coordinates_graph,
    count_zero_sum_subsets,
    direction_index,
    edge_graph,
    mixed_volume_few_directions,
    mixed_volume_with_stats,
    revolving_door,
    subset_sum_instance,
)

__all__ = [
    "parse_zonotopes",
    "read_zonotope_file",
    "serialize_zonotopes",
    "write_zonotope_file",
    "DirectionIndex",
    "ZonotopeSystem",
    "canonical_direction",
    "coordinates_graph",
    "count_zero_sum_subsets",
    "direction_index",
    "edge_graph",
    "mixed_volume_few_directions",
    "mixed_volume_with_stats",
    "revolving_door",
    "subset_sum_instance",
]
