"""
Конфигурационный файл численного инструментария для гармонических продолжений
"""

import os
from dotenv import load_dotenv

# Загружаем переменные окружения из .env файла
load_dotenv()


def _env_int(name, default):
    return int(os.getenv(name, str(default)))


def _env_float(name, default):
    return float(os.getenv(name, str(default)))


JSON_LOG_FORMAT = os.getenv("JSON_LOG_FORMAT", "true").lower() in ("1", "true", "yes")

# Усечение рядов Фурье
DEFAULT_TRUNCATION = _env_int("HARMONIC_TRUNCATION", 512)
MAX_TRUNCATION = 2 ** 16
DFT_SAMPLES = _env_int("HARMONIC_DFT_SAMPLES", 4096)
MIN_SAMPLES = 16

# Допуски на хвост ряда: внутри круга и у границы (|z| > NEAR_BOUNDARY_RADIUS)
INTERIOR_TAIL_TOLERANCE = _env_float("HARMONIC_INTERIOR_TAIL_TOL", 1e-12)
BOUNDARY_TAIL_TOLERANCE = _env_float("HARMONIC_BOUNDARY_TAIL_TOL", 1e-8)
NEAR_BOUNDARY_RADIUS = 0.99

# Квадратуры
ORACLE_TOLERANCE = _env_float("HARMONIC_ORACLE_TOL", 1e-10)
QUADRATURE_MAX_PANELS = _env_int("HARMONIC_MAX_PANELS", 4000)
NORM_RTOL = 1e-12
CONSTANT_ATOL = 1e-9

# Сетки: радиусы 1 - 2^{-k}, число углов удваивается с уровнем
RADIAL_LEVELS = _env_int("HARMONIC_LEVELS", 12)
ANGULAR_BASE_NODES = _env_int("HARMONIC_ANGULAR_NODES", 64)
MAX_ANGULAR_NODES = 2 ** 18
SUP_REFINEMENT_RTOL = 1e-6
CIRCLE_CACHE_SIZE = _env_int("HARMONIC_CIRCLE_CACHE", 48)

# Обнаружение расходимости норм
DIVERGENCE_THRESHOLD = 1e3
DIVERGENCE_GROWTH = 0.05
DIVERGENCE_RUN = 4
STALLED_INCREMENT_RATIO = 0.75

# Дилатация и эллиптичность
DILATATION_EPS = 1e-14
ELLIPTIC_INFLATION = 1.05

# Проверки неравенств
VERIFY_SLACK = 1e-6
RANDOM_SEED = _env_int("HARMONIC_SEED", 42)
SPOT_CHECK_POINTS = 100

# Набор пресетов и показателей для полного прогона
SUITE_PRESETS = [
    "constant",
    "identity",
    "conjugate",
    "abs-sin",
    "elliptic-trace",
    "affine-qr",
    "random-trig",
]
SUITE_WORKERS = _env_int("HARMONIC_SUITE_WORKERS", 4)

DEFAULT_REPORT_FORMAT = os.getenv("HARMONIC_REPORT_FORMAT", "json")

# Настройки логирования
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FILE = os.getenv("LOG_FILE", None)  # Путь к файлу логов (если None - только stderr)

# Файл для выгрузки метрик Prometheus (textfile collector); None - не выгружать
METRICS_FILE = os.getenv("METRICS_FILE", None)
