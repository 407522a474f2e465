import logging
import logging.handlers
import os
from datetime import datetime

import config

_configured = False


class CompactFormatter(logging.Formatter):
    def format(self, record):
        return f"{datetime.now().strftime('%Y-%m-%d %H:%M:%S')} [{record.levelname}] {record.name}: {record.getMessage()}"


def setup_logging(stderr_level=logging.WARNING):
    global _configured
    if _configured:
        return
    _configured = True
    os.makedirs(config.LOG_DIR, exist_ok=True)
    fmt = CompactFormatter()

    # Library logger - scan progress, certificate summaries, oracle failures
    lib = logging.getLogger('filbert')
    lib.setLevel(getattr(logging, config.LOG_LEVEL, logging.INFO))
    h = logging.handlers.RotatingFileHandler(
        os.path.join(config.LOG_DIR, 'filbert.log'), maxBytes=5*1024*1024, backupCount=3
    )
    h.setFormatter(fmt)
    lib.addHandler(h)

    # Bench logger - timing comparisons
    bench = logging.getLogger('filbert.bench')
    h2 = logging.handlers.RotatingFileHandler(
        os.path.join(config.LOG_DIR, 'bench.log'), maxBytes=5*1024*1024, backupCount=2
    )
    h2.setFormatter(fmt)
    bench.addHandler(h2)

    # Access logger - only errors and slow requests
    access = logging.getLogger('filbert.access')
    access.setLevel(logging.WARNING)
    access.propagate = False
    h3 = logging.handlers.RotatingFileHandler(
        os.path.join(config.LOG_DIR, 'access.log'), maxBytes=5*1024*1024, backupCount=2
    )
    h3.setFormatter(fmt)
    access.addHandler(h3)

    # Stderr for warnings and errors only
    stderr = logging.StreamHandler()
    stderr.setLevel(stderr_level)
    stderr.setFormatter(fmt)
    lib.addHandler(stderr)
