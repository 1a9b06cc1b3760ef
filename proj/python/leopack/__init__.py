"""Packing pipeline for long linear elastic objects."""

try:
    from . import _leopack as _impl  # installed wheel layout
except ImportError:
    import _leopack as _impl  # build-tree layout

BoxSpec = _impl.BoxSpec
ObjectSpec = _impl.ObjectSpec
ReferenceTemplate = _impl.ReferenceTemplate
default_sample_count = _impl.default_sample_count
generate_template = _impl.generate_template
make_object = _impl.make_object
max_capacity = _impl.max_capacity
parse_config = _impl.parse_config
perceive = _impl.perceive
placing_indices = _impl.placing_indices
render_config = _impl.render_config
render_initial_cloud = _impl.render_initial_cloud
run_config = _impl.run_config
shape_difference = _impl.shape_difference

__all__ = [
    "BoxSpec",
    "ObjectSpec",
    "ReferenceTemplate",
    "default_sample_count",
    "generate_template",
    "make_object",
    "max_capacity",
    "parse_config",
    "perceive",
    "placing_indices",
    "render_config",
    "render_initial_cloud",
    "run_config",
    "shape_difference",
]
