from .poly_factory import poly_factory, pure_field_factory, side_factory

__all__ = ["poly_factory", "pure_field_factory", "side_factory"]
