"""Published reference values, transcribed as printed.

Nothing here is used by the derivations themselves.  The tables exist so the
derived results can be compared against what was printed, and so the
hard-coded three-layer coefficient forms can be cross-checked against the
expansion engine.

Linear forms are written as ``"sym=coef sym=coef ..."``; a field symbol
``gamma*h2`` stands for the product of the coordination number and ``h_2``.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import RationalPolynomial, parse_rational


def _form(text: str, scale: int = 1) -> dict[str, Fraction]:
    out = {}
    for item in text.split():
        key, _, val = item.partition("=")
        out[key] = parse_rational(val) * scale
    return out


_ODD = "J11 J13 J15 J17 J33 J35 J37 J55 J57 J77".split()
_EVEN = "J22 J24 J26 J44 J46 J66".split()
_FIELDS = "gamma*h2 gamma*h4 gamma*h6".split()


def _row(keys, values: str) -> dict[str, Fraction]:
    vals = values.split()
    assert len(vals) == len(keys)
    return {k: parse_rational(v) for k, v in zip(keys, vals)}


# Three-layer constants as linear forms in the spin-7/2 couplings.
# Off-diagonal K and the R_{a,b,c} are coefficients of a single representative
# monomial (no factor 1/2), which is the convention the solver relies on.
LAYER_FORMS: dict[str, dict[str, Fraction]] = {
    "K11": _row(_ODD, "1 61/4 3481/16 186901/64 3721/16 212341/64 11400961/256 12117361/256 650602381/1024 34931983801/4096"),
    "K12": _row(_ODD, "2 29 2971/8 37417/8 3355/8 42697/8 8569045/128 8566741/128 212837399/256 21014213935/2048"),
    "K13": _row(_ODD, "4 46 2371/4 7606 1891/4 5776 4619941/64 4389541/64 108081833/128 10558224391/1024"),
    "K22": _row(_ODD, "4 55 2461/4 112435/16 3025/4 135355/16 6183925/64 6056521/64 276702535/256 12641629225/1024"),
    "K23": _row(_ODD, "8 86 1861/2 84463/8 1705/2 72823/8 3296245/32 3103321/32 140402443/128 6351565585/512"),
    "K33": _row(_ODD, "16 124 1261 56491/4 961 39091/4 1751221/16 1590121/16 71235151/64 3191233081/256"),
    "K21": _row(_EVEN + _FIELDS, "21 3003/8 41613/8 41181/8 8470293/128 212094831/256 2 53 6331/8"),
    "K31": _row(_EVEN + _FIELDS, "42 1995/4 25233/4 22533/4 4438005/64 107571711/128 4 58 3211/4"),
    "K32": _row(_EVEN + _FIELDS, "84 1743/2 9624 17871/2 3150213/32 69380571/64 8 92 2071/2"),
    "R12": _row(_EVEN, "16 424 6331 11236 335543/2 40081561/16"),
    "R13": _row(_EVEN, "64 928 12844 13456 186238 10310521/4"),
    "R23": _row(_EVEN, "256 2944 33136 33856 381064 4289041"),
    "R123": _row(_EVEN, "32 656 9542 12296 176891 20328841/8"),
    "R213": _row(_EVEN, "64 1216 16804 19504 255376 13111501/4"),
    "R312": _row(_EVEN, "128 1664 21128 21344 267824 6649981/2"),
    "R132": _row(_ODD[1:], "24 420 11613/2 732 23253/2 158637 365505/2 79674063/32 2170481313/64"),
    "R231": _row(_ODD[1:], "48 840 11613 1320 18933 244005 258405 52190943/16 1305707655/32"),
    "R321": _row(_ODD[1:], "96 1680 23226 1488 20586 264738 264810 26507103/8 656029983/16"),
    # printed with J53, J73, J75; read as J35, J37, J57
    "R": _form("J33=256 J35=4480 J55=78400 J37=61936 J57=1083880 J77=14984641", scale=9),
}

# Periodic-boundary reduction: every coupling per unit J77 (J sector) or h6 (fields).
PERIODIC_J_PER_J77 = _form(
    "J22=0 J24=0 J26=0 J44=0 J46=0 J66=0 "
    "J11=8991341559/389120 J13=-1424553921/48640 J15=62601021/12160 "
    "J17=-764019/3040 J33=52080091/4864 J35=-12187819/3040 "
    "J37=30625/152 J55=30821/80 J57=-7441/190 J77=1"
)
PERIODIC_H_PER_H6 = _form("h2=259/16 h4=-35/4 h6=1")
PERIODIC_K1_PER_J77 = Fraction(105840, 19)
PERIODIC_K2_PER_H6 = Fraction(360)

FREE_H_PER_H6 = _form("h2=1429/16 h4=-20 h6=1")
FREE_K1_PER_J77 = Fraction(105840, 19)
FREE_K3_PER_H6 = Fraction(-90)

# Decoupled-layer case: J couplings as forms in (J55, J57, J77).
EXACT_J_FORMS = {
    "J11": _form("J57=6276855/512 J77=-47629545/1024 J55=2557047/1792"),
    "J13": _form("J57=-2064839/256 J77=14979545/256 J55=-16765/16"),
    "J15": _form("J57=-87805/32 J77=-2794715/32 J55=-311/8"),
    "J17": _form("J57=3709/16 J77=97205/16 J55=50/7"),
    "J33": _form("J57=135485/32 J55=1225/4 J77=14984641/256"),
    "J35": _form("J57=-3871/16 J55=-35"),
    "J37": _form("J57=-35/2 J77=-3871/8"),
}
EXACT_K_FORMS = {
    "K11": _form("J57=114975/16 J77=11432925/64 J55=1125/4"),
    "K22": _form("J57=91350 J77=7397775/4 J55=4500"),
    "K33": _form("J57=-88200 J77=-2061675 J55=-3600"),
}

# Partition functions of the periodic spin-1/2 chain as {(J coef, h coef): multiplicity}.
PRINTED_Z = {
    2: {("1/2", "1"): 1, ("-1/2", "0"): 2, ("1/2", "-1"): 1},
    3: {("3/4", "3/2"): 1, ("-1/4", "1/2"): 3, ("-1/4", "-1/2"): 3, ("3/4", "-3/2"): 1},
    4: {("0", "0"): 4, ("1", "2"): 1, ("0", "1"): 4, ("-1", "0"): 2, ("0", "-1"): 4, ("1", "-2"): 1},
    5: {
        ("1/4", "1/2"): 5, ("5/4", "-5/2"): 1, ("-3/4", "-1/2"): 5, ("-3/4", "1/2"): 5,
        ("1/4", "-1/2"): 5, ("1/4", "-3/2"): 5, ("5/4", "5/2"): 1, ("1/4", "3/2"): 5,
    },
}
PRINTED_Z = {
    M: {(parse_rational(a), parse_rational(b)): n for (a, b), n in table.items()}
    for M, table in PRINTED_Z.items()
}


def _poly(text: str) -> RationalPolynomial:
    """``"k:coef k:coef"`` -> polynomial."""
    coeffs = {}
    for item in text.split():
        k, _, v = item.partition(":")
        coeffs[int(k)] = parse_rational(v)
    return RationalPolynomial(coeffs.get(k, 0) for k in range(max(coeffs) + 1))


def _factored(inner: str, roots) -> RationalPolynomial:
    return _poly(inner) * RationalPolynomial.from_roots(roots)


def _sym_roots(*values):
    out = [0]
    for v in values:
        out += [v, -v]
    return out


# Printed digit polynomials, in printed order (sigma_1, sigma_2, ...).
PRINTED_INVERSE: dict[tuple[int, int], list[RationalPolynomial]] = {
    (2, 2): [_poly("1:13/12 3:-1/3"), _poly("1:-7/6 3:2/3")],
    (2, 3): [
        _poly("7:1/252 5:-61/720 3:301/576 1:-30251/26880"),
        _poly("7:-1/630 5:17/360 3:-637/1440 1:14887/13440"),
        _poly("7:-4/315 5:11/45 3:-217/180 1:2161/1680"),
    ],
    (3, 2): [
        _factored("2:-27/560 4:1/560 0:139/420", _sym_roots(1)),
        _factored("2:57/560 4:-3/560 0:-31/140", _sym_roots(3)),
    ],
}

# The (3, 3) lists contain a doubled "++" sign in front of one term; these are
# transcribed with that read as a single "+".
PRINTED_INVERSE_3_3 = [
    _factored(
        "2:15184387919/1918955630592000 4:-66791923009387/192008442802176000000 "
        "6:22371900997/2643031196467200000 8:-5057645209/40579872915456000000 "
        "0:-17330419/226767340800 10:2967383/2608706115993600000 "
        "12:-664843/105721247858688000000 14:883/45812540738764800000 "
        "16:-1/39836991946752000000",
        _sym_roots(1, 2, 3, 4),
    ),
    _factored(
        "2:-192181663909/624923050752000000 4:15276178774039/427447366714368000000 "
        "6:-3162180475127/1496065783500288000000 8:88912189981/1329836252000256000000 "
        "0:148211081/128501493120000 10:-13780223389/11968526268002304000000 "
        "12:126626341/11968526268002304000000 14:-193309/3989508756000768000000 "
        "16:173/1994754378000384000000",
        _sym_roots(1, 8, 9, 10),
    ),
    _factored(
        "2:841457709/2345390215168000 4:-627741171441/16417731506176000000 "
        "6:25815639/14857675571200000 8:-77436279/1836948979712000000 "
        "0:-15097/23796572800 10:7713/13121064140800000 "
        "12:-47463/10103219388416000000 14:261/13134185204940800000 "
        "16:-9/262683704098816000000",
        _sym_roots(3, 6, 9, 12),
    ),
]
