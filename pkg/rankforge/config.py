import os


def _floats(raw: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in raw.split(",") if tok.strip())


# Injeção de dependência via ENV (Padrão 12-Factor); CLI flags override per run
TOL = float(os.getenv("RANKFORGE_TOL", "1e-12"))
MAX_ITER = int(os.getenv("RANKFORGE_MAX_ITER", "100000"))

# Period-2 detector: consecutive steps with y_{k+1} ≈ y_{k-1} but y_{k+1} != y_k
OSCILLATION_WINDOW = 32

# ε-limit for reducible results matrices
EPSILON_SCHEDULE = _floats(
    os.getenv("RANKFORGE_EPSILON_SCHEDULE", "1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8")
)
LIMIT_TOL = float(os.getenv("RANKFORGE_LIMIT_TOL", "1e-6"))

# Relative tie tolerance for rank_players
TIE_TOL = float(os.getenv("RANKFORGE_TIE_TOL", "1e-9"))

# Teleport weight α in G = (1-α)S + α(1/n)𝟙𝟙ᵀ (conventional damping d = 1 - α)
ALPHA = float(os.getenv("RANKFORGE_ALPHA", "0.15"))

# Hyperlink columns must sum to 0 or 1 within this
COLUMN_SUM_TOL = 1e-12

# Multithreading limits
MAX_WORKERS = int(os.getenv("RANKFORGE_MAX_WORKERS", "8"))

# Optional SQLite report history; None disables persistence
DATABASE_PATH = os.getenv("RANKFORGE_DATABASE_PATH") or None

LOG_LEVEL = os.getenv("RANKFORGE_LOG_LEVEL", "WARNING")
