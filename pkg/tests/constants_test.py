import math

REL_PATH_DATA_DEFAULT_RUN = 'Data/default_run'
REL_PATH_DATA_ALL_DISKS = 'Data/all_disks'
REL_PATH_DATA_SQUARE_COMPARE = 'Data/square_compare'
REL_PATH_DATA_TAIL_SQUARE = 'Data/tail_square'
REL_PATH_DATA_MALFORMED = 'Data/malformed'

CONFIG_FILE_NAME = 'config.toml'

DICT_MALFORMED_FILE_TO_EXIT_CODE = {
    "syntax_error.toml": 2,
    "clockwise_polygon.toml": 2,
    "unknown_body.toml": 2,
    "bad_phi.toml": 2,
}

# Unit disks under phi(r) = r^2/2 with c0 = 1
BALL_FIRST_T1 = 2.0 * math.pi * math.exp(-0.5)          # 3.81094
BALL_SURFACE_T2 = 2.0 * math.pi * 2.0 * math.exp(-2.0)  # 1.70067
BALL_SECOND_T2 = 2.0 * math.pi * math.exp(-2.0) * (1.0 - 4.0)  # -2.55101
BALL_GAUSS_SECOND_T2 = math.exp(-2.0) * (1.0 - 4.0)     # -0.40601
SQUARE_FIRST_T1 = 0.66076

RATE_FIRST_T10 = -0.91719
RATE_SECOND_T10 = -0.87134
RATE_GAUSS_SECOND_T10 = -0.90810
