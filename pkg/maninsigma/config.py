# maninsigma/config.py
import os
from dotenv import load_dotenv
load_dotenv()

COMPARE_TOL = float(os.getenv("MANIN_SIGMA_TOL", "1e-8"))  # published form vs numeric pipeline
DB_PATH = os.getenv("MANIN_SIGMA_DB")  # unset -> runs are not archived
VERBOSE = os.getenv("MANIN_SIGMA_VERBOSE", "0").lower() in ("1", "true", "yes")

DEFAULT_SEED = int(os.getenv("MANIN_SIGMA_SEED", "7"))
DEFAULT_SAMPLES = int(os.getenv("MANIN_SIGMA_SAMPLES", "100"))
DEFAULT_RADIUS = float(os.getenv("MANIN_SIGMA_RADIUS", "0.4"))
MAX_RESAMPLE = int(os.getenv("MANIN_SIGMA_RETRIES", "5"))
