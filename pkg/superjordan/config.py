import os
from dotenv import load_dotenv

dotenv_path = os.path.join(os.path.dirname(__file__), '.env')
load_dotenv(dotenv_path)


LOG_LEVEL = os.environ.get("SUPERJORDAN_LOG_LEVEL", "WARNING").upper()
LOG_PATH = os.environ.get("SUPERJORDAN_LOG_PATH", "")

# Thread pool size; results never depend on it, and the GIL keeps the scans serial
WORKERS = int(os.environ.get("SUPERJORDAN_WORKERS", "1"))

# Idempotents of rational algebras are counted after reduction mod this prime
PROBE_PRIME = int(os.environ.get("SUPERJORDAN_PROBE_PRIME", "5"))

SEARCH_DEGREE = int(os.environ.get("SUPERJORDAN_SEARCH_DEGREE", "2"))
SEARCH_COEFFICIENTS = os.environ.get("SUPERJORDAN_SEARCH_COEFFICIENTS", "0,1,-1,2,-2,1/2,-1/2")
SEARCH_MAX_TERMS = int(os.environ.get("SUPERJORDAN_SEARCH_MAX_TERMS", "3"))

SHOW_PROGRESS = os.environ.get("SUPERJORDAN_PROGRESS", "False").lower() == "true"
