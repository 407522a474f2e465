import os
import tempfile

# Keep test runs from writing logs next to the sources
os.environ.setdefault("FILBERT_LOG_DIR", os.path.join(tempfile.gettempdir(), "filbert-test-logs"))
os.environ.pop("FILBERT_THREADS", None)

from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("default")
