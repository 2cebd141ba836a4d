"""Shared battery of diagonal parameter tuples for n = 2..8.

Each n gets at least six tuples: at least two singular ones where those
exist (n >= 3), at least four regular ones, and deliberately awkward shapes:
ties gamma_k == gamma_{k+1}, deep first-asymmetry index k0, zero and positive
exponents alpha_k.
"""

from trilie.algebra import GammaTuple, classify

BATTERY = {
    2: [
        ("reg-sym", "1,-1"),
        ("reg-a", "1,0"),
        ("reg-b", "0,1"),
        ("reg-c", "2,1"),
        ("reg-frac", "1/2,-3/2"),
        ("reg-d", "3,1"),
    ],
    3: [
        ("sing-a", "1,0,1"),
        ("sing-b", "2,5,2"),
        ("reg-a", "1,0,-1"),
        ("reg-b", "1,0,0"),
        ("reg-c", "0,1,2"),
        ("reg-d", "1,1,0"),
        ("reg-frac", "1/2,0,3/2"),
    ],
    4: [
        ("sing-tie", "1,0,0,1"),
        ("sing-b", "2,1,1,2"),
        ("reg-alpha-neg", "1,0,0,-2"),
        ("reg-alpha-neg3", "1,2,-2,-1"),
        ("reg-alpha-zero", "1,0,1,0"),
        ("reg-alpha-pos", "1,-1,2,0"),
        ("reg-deep-k0", "1,1,0,1"),
    ],
    5: [
        ("sing-a", "2,1,0,1,2"),
        ("sing-tie", "1,1,0,1,1"),
        ("reg-alpha-neg", "1,0,0,0,-2"),
        ("reg-b", "0,1,2,3,4"),
        ("reg-deep-k0", "1,0,0,1,1"),
        ("reg-alpha-pos", "1,-1,5,2,0"),
        ("reg-tie23", "1,2,2,0,-1"),
    ],
    6: [
        ("sing-a", "1,0,2,2,0,1"),
        ("sing-b", "3,1,0,0,1,3"),
        ("reg-deep-k0", "0,0,0,1,0,0"),
        ("reg-k0-2", "1,0,1,2,3,1"),
        ("reg-alpha-neg", "1,0,0,0,0,-2"),
        ("reg-alpha-pos", "1,0,5,5,2,0"),
        ("reg-alpha-zero", "0,1,2,2,0,1"),
    ],
    7: [
        ("sing-a", "1,2,3,0,3,2,1"),
        ("sing-b", "0,1,1,2,1,1,0"),
        ("reg-alpha-zero", "0,1,2,3,4,-1,0"),
        ("reg-deep-k0", "1,2,0,5,3,2,1"),
        ("reg-alpha-neg", "1,0,0,0,0,0,-2"),
        ("reg-alpha-pos", "2,0,1,3,1,4,0"),
        ("reg-b", "0,1,1,3,1,2,1"),
    ],
    8: [
        ("sing-a", "1,2,3,4,4,3,2,1"),
        ("sing-b", "0,1,0,2,2,0,1,0"),
        ("reg-deep-k0", "1,2,3,4,5,3,2,1"),
        ("reg-k0-2", "0,1,2,3,3,2,5,0"),
        ("reg-alpha-neg", "1,0,0,0,0,0,0,-2"),
        ("reg-alpha-pos", "1,0,2,3,3,2,4,0"),
        ("reg-b", "0,1,2,3,4,2,1,1"),
    ],
}


def battery(n):
    return [(label, GammaTuple.parse(text)) for label, text in BATTERY[n]]


def singular_battery(n):
    return [(label, g) for label, g in battery(n) if classify(g).singular]


def regular_battery(n):
    return [(label, g) for label, g in battery(n) if not classify(g).singular]
