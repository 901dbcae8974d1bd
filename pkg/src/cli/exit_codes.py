from enum import IntEnum


class ExitCode(IntEnum):
    OK = 0
    RUNTIME = 1
    # argparse exits with 2 on bad flags
    USAGE = 2
    PARSE = 3
    VALIDATION = 4
    CHECK_FAILED = 5
