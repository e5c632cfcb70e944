from .poly import IntPoly
from .newton import principal_polygon, is_p_regular
from .ore import dedekind_test, ore_index, splitting_shape
from .pure import PureField, Status, analyze
from .oracle import p_maximal_order, residue_census

__all__ = ['IntPoly', 'PureField', 'Status', 'analyze', 'dedekind_test',
           'ore_index', 'splitting_shape', 'principal_polygon',
           'is_p_regular', 'p_maximal_order', 'residue_census']
