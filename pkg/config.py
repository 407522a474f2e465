"""Process-wide settings, read from the environment."""
import os
from pathlib import Path

from errors import ConfigError

BASE_DIR = Path(__file__).parent
LOG_DIR = Path(os.environ.get("FILBERT_LOG_DIR", BASE_DIR / "logs"))
LOG_LEVEL = os.environ.get("FILBERT_LOG_LEVEL", "INFO").upper()

HOST = os.environ.get("FILBERT_HOST", "127.0.0.1")
PORT = int(os.environ.get("FILBERT_PORT", "8888"))

# Default grids
CERT_N_MAX = 8
CERT_X_VALUES = (1, 2, 3)
CERT_R_VALUES = (1, 2, 3)
# multi-index certificates (H, Z, T, Y) run on a smaller n
CERT_SUM_N_MAX = 6
SCAN_N_MAX = 20
SCAN_R_MAX = 10
FIBO_SCAN_N_MAX = 10
FIBO_SCAN_R_MAX = 6

# Request limits for the HTTP API
API_MAX_N = 40
API_MAX_SCAN_N = 24
API_MAX_SCAN_R = 12
API_MAX_CERT_N = 8


def worker_count():
    """Worker processes allowed by FILBERT_THREADS (default 1, i.e. serial)."""
    raw = os.environ.get("FILBERT_THREADS")
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"FILBERT_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"FILBERT_THREADS must be a positive integer, got {raw!r}")
    return value
