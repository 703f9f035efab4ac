from .topology import (
    DEFAULT_BONES,
    HEAD_CENTER,
    NODE_NAMES,
    PELVIS,
    SkeletonTopology,
    default_topology,
    load_topology,
    save_topology,
)
from .geometry import (
    BOWL_RADIUS,
    CYLINDER_RADIUS,
    SPHERE_RADIUS,
    Cylinder,
    GeometryFrame,
    Sphere,
    build_geometry,
    cylinder_between,
)
from .export import (
    export_geometry,
    export_jsonl,
    export_svg_ortho,
    frame_to_dict,
    read_jsonl,
)
