from .data import DataTracer
from .linalg import pinvh_sqrt, psd_part, top_eigh, is_symmetric
from .quadrature import gauss_legendre, square_grid, uniform_phases
from .io import format_number, round_floats, write_csv, write_json
