# INCLUDE HERE ALL THE CONSTANTS AND USE UPPER CASE NAMES
import math

TWO_PI = 2.0 * math.pi

#---------------- -------------------- --------------|
#---------------- LOGGING COLOR CONFIG --------------|
#---------------- -------------------- --------------|
LOG_COLORS = {
        'INFO': '\033[92m',    # Green
        'WARNING': '\033[93m', # Yellow
        'ERROR': '\033[91m',   # Red
        'CRITICAL': '\033[91m',# Red
        'DEBUG': '\033[94m',   # Blue (optional)
    }
LOG_RESET = '\033[0m'
LOG_FORMAT = '%(levelname)s - %(message)s'
LOG_FILE_FORMAT = '%(asctime)s %(levelname)s - %(message)s'

#---------------- -------------------- --------------|
#---------------- BODIES ---------------------------|
#---------------- -------------------- --------------|
GAUGE_SCAN_NODES = 512
GOLDEN_ANGLE_WIDTH = 1e-12
VALIDATION_GRID_NODES = 4096
FOURIER_MAX_HARMONICS = 64
FOURIER_CONVEXITY_MARGIN = 1e-10
POLYGON_TIE_TOLERANCE = 1e-12
EULER_IDENTITY_TOLERANCE = 1e-9
GAUGE_AMBIGUITY_TOLERANCE = 1e-9
INRADIUS_REFINEMENT_TOLERANCE = 1e-9
GAUGE_CHUNK_SIZE = 4096

#---------------- -------------------- --------------|
#---------------- QUADRATURE -----------------------|
#---------------- -------------------- --------------|
PERIODIC_MIN_NODES = 64
PERIODIC_MAX_NODES = 2 ** 16
PANEL_MIN_ORDER = 16
PANEL_MAX_ORDER = 1024
MINIMIZE_SCAN_NODES = 4096
MINIMIZE_BASIN_TOLERANCE = 1e-6
TRUNCATION_FLOOR = 1e-300
LINE_QUAD_LIMIT = 500
# Peaks of exp(-phi) on the circle: scan size, exponent gap beyond which a local
# minimum is ignored, spread under which the exponent counts as flat.
PEAK_SCAN_NODES = 4096
PEAK_WINDOW = 30.0
PEAK_FLAT_SPREAD = 1.0
PEAK_CURVATURE_STEP = 1e-4
PEAK_MIN_WIDTH = 1e-8
PEAK_MAX_WIDTH = 0.4
PEAK_LADDER = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0)
GAUGE_KINK_SCAN_NODES = 1024

#---------------- -------------------- --------------|
#---------------- DENSITIES ------------------------|
#---------------- -------------------- --------------|
CONVEXITY_TOLERANCE = 1e-12
NORMALIZATION_TOLERANCE = 1e-8
# Beyond this argument the regularized upper incomplete gamma underflows; an asymptotic series is used.
GAMMA_TAIL_SWITCH = 700.0
RADIAL_PANELS = 16
RADIAL_PANEL_ORDER = 24
RADIAL_TAIL_EXPONENT = 745.0

#---------------- -------------------- --------------|
#---------------- MIXED MEASURES AND ORACLES --------|
#---------------- -------------------- --------------|
MIXED_TOLERANCE = 1e-9
MASS_TOLERANCE = 1e-12
DEFAULT_FD_STEPS = (1e-2, 5e-3, 2.5e-3)
MIN_FD_STEP = 1e-6
FD_ERROR_POWER = 1
SIGNIFICANCE_FLOOR = 1e-280
GAUGE_FD_STEP = 1e-4
DILATION_FD_STEP = 1e-3
BRUTEFORCE_MIN_NODES = 10 ** 4

#---------------- -------------------- --------------|
#---------------- ASYMPTOTICS ----------------------|
#---------------- -------------------- --------------|
SWEEP_T_RANGE = (2.0, 25.0)
DEFAULT_SWEEP_POINTS = 16
DEFAULT_POWER_SWEEP = (2.5, 14.0)
DEFAULT_LINEAR_SWEEP = (2.5, 40.0)
TAIL_FLOOR = 1e-290
RATE_BAND_POWER = 0.1
RATE_BAND_LINEAR = 0.15

VERDICT_HOLDS = "HOLDS"
VERDICT_VIOLATED = "VIOLATED"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"
VERDICT_HYPOTHESIS_FAILS = "HYPOTHESIS_FAILS"

#---------------- -------------------- --------------|
#---------------- CLI AND OUTPUTS ------------------|
#---------------- -------------------- --------------|
SWEEP_CSV_COLUMNS = ['t', 'sign', 'log_abs', 'ratio', 'phi_rt', 'nodes']
CORRECTED_RATIO_COLUMN = 'ratio_corrected'
CSV_FLOAT_FORMAT = '%.17g'

VALID_COMMANDS = ('first', 'second', 'gauss', 'sweep', 'tail', 'inradius', 'compare', 'verify', 'normalize')
VALID_SWEEP_KINDS = ('first', 'second', 'gauss')
VALID_BODY_KINDS = ('disk', 'ellipse', 'fourier', 'polygon', 'combination')
VALID_PHI_KINDS = ('power', 'linear', 'expm1')
VALID_ROLES = ('K', 'M', 'A', 'B', 'C')

EXIT_SUCCESS = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_ASSERTION = 4
