from fractions import Fraction

M07_POINTS = 7
DEFAULT_PARAMS = (3, 5, 9)
DEGENERATE_PARAMS = (35, 10, 36)

THREADS_ENV = 'FNEF_THREADS'

EXIT_PASS = 0
EXIT_BOUND_GAP = 1
EXIT_RESIDUAL = 2
EXIT_LINT = 3
EXIT_USAGE = 64
EXIT_DOMAIN = 65

CASE_IDS = ['I', 'II', 'III', 'IV']
CASE_CORPUS_PREFIX = {'I': 'i', 'II': 'ii', 'III': 'iii', 'IV': 'iv'}

# label-orbit thresholds after substituting an average with c{1,2,3} = -1
CASE_THRESHOLDS = {
    'I': {
        'D{1,4}': Fraction(1, 6),
        'D{1,2,4}': Fraction(0),
        'D{1,4,5}': Fraction(1, 6),
        'D{4,5,6}': Fraction(-1, 2),
    },
    'II': {
        'D{2,4}': Fraction(1),
        'D{1,2,4}': Fraction(1),
        'D{1,2,6}': Fraction(0),
        'D{1,4,6}': Fraction(0),
        'D{1,6,7}': Fraction(0),
        'D{2,3,4}': Fraction(0),
        'D{2,4,5}': Fraction(0),
        'D{2,4,6}': Fraction(1),
        'D{2,6,7}': Fraction(0),
        'D{4,6,7}': Fraction(0),
    },
    'III': {
        'D{1,4}': Fraction(2, 9),
        'D{1,2,4}': Fraction(1, 9),
        'D{1,2,7}': Fraction(-1, 3),
        'D{1,4,5}': Fraction(1, 9),
        'D{1,4,7}': Fraction(2, 9),
        'D{4,5,7}': Fraction(-1, 3),
    },
    'IV': {
        'D{1,5}': Fraction(2, 9),
        'D{2,5}': Fraction(2, 9),
        'D{1,2,4}': Fraction(-1, 3),
        'D{1,2,5}': Fraction(1, 9),
        'D{1,4,5}': Fraction(2, 9),
        'D{1,5,6}': Fraction(1, 9),
        'D{2,3,4}': Fraction(-1, 3),
        'D{2,3,5}': Fraction(1, 9),
        'D{2,4,5}': Fraction(2, 9),
        'D{2,5,6}': Fraction(1, 9),
        'D{4,5,6}': Fraction(-1, 3),
    },
}

# left-hand sides of the D1 system, in the order the coefficients are solved for
SYSTEM_STAR_VALUES = [2, 2, 0, 0, 1, 1, 1, -1, 0, -1, 0, 0, -1, -1, -1]
