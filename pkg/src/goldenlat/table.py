"""Expected extremal-form table (weight, nu(f - 1), s_eta, s_one, containment)."""

EXPECTED_TABLE = [
    {"weight": 2, "nu": (1, 2), "s_eta": 240, "s_one": 120, "pm": "+"},
    {"weight": 4, "nu": (1, 2), "s_eta": 480, "s_one": 240, "pm": "+"},
    {"weight": 6, "nu": (2, 4), "s_eta": 196560, "s_one": 37800, "pm": "+"},
    {"weight": 8, "nu": (2, 4), "s_eta": 146880, "s_one": 21600, "pm": "+"},
    {"weight": 10, "nu": (2, 5), "s_eta": 39600, "s_one": 79200, "pm": "-"},
    {"weight": 12, "nu": (3, 6), "s_eta": 52416000, "s_one": 2620800, "pm": "+"},
    {"weight": 14, "nu": (3, 6), "s_eta": 15590400, "s_one": 537600, "pm": "+"},
    {"weight": 16, "nu": (3, 7), "s_eta": 2611200, "s_one": 2611200, "pm": "-"},
    {"weight": 18, "nu": (4, 8), "s_eta": 6218175600, "s_one": 75411000, "pm": "+"},
    {"weight": 20, "nu": (4, 9), "s_eta": 1250172000, "s_one": 609840000, "pm": "-"},
    {"weight": 24, "nu": (5, 10), "s_eta": 565866362880, "s_one": 1655821440, "pm": "+"},
    {"weight": 30, "nu": (6, 13), "s_eta": 45792819072000, "s_one": 3217294080000, "pm": "-"},
]

TABLE_WEIGHTS = tuple(row["weight"] for row in EXPECTED_TABLE)
