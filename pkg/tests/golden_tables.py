"""Golden encodings, transcribed from the figure tables and the prose definitions.

Rows are the first argument and columns the second, both in the order t f n b.
"""

from dm4.core import B, F, N, T, input_tuples

BINARY_FIGURES = {
    "pbp2_1": ("tffb", "tffb", "tfnb", "bffb"),
    "pbp2_2": ("tfnf", "tfnf", "nfnf", "tfnb"),
    "mnh2_1": ("ffnb", "ffnb", "ffnf", "ffnb"),
    "mnh2_2": ("ffnb", "ffnb", "ffnb", "fffb"),
    "nh2_1": ("ffff", "ffff", "ffff", "ffnf"),
    "nh2_2": ("ffff", "ffff", "ffnf", "ffnb"),
    "nh2_3": ("ffff", "ffff", "fffb", "ffff"),
    "nh2_4": ("ffff", "ffff", "ffnb", "fffb"),
    "mhnp2": ("tttt", "tttt", "nnnf", "bbfb"),
    "mnp2_1": ("tttb", "tttb", "nnnf", "bbfb"),
    "mnp2_2": ("tttt", "tttt", "nnnn", "bbfb"),
    "mnp2_3": ("ttnt", "ttnt", "nnnf", "bbfb"),
    "mnp2_4": ("tttt", "tttt", "nnnf", "bbbb"),
    "np2_1": ("ffnb", "ffff", "ffff", "ffff"),
    "np2_2": ("ffnb", "ffff", "ffff", "fffb"),
    "np2_3": ("ffnf", "ffff", "ffff", "ffff"),
    "to_tmax": ("tnnt", "tttt", "tttt", "tnnt"),
    "to_imax": ("bffb", "bbbb", "bbbb", "bffb"),
    "eq_tmin": ("bfff", "fbff", "ffbf", "fffb"),
    "eq_imin": ("tnnn", "ntnn", "nntn", "nnnt"),
}

# the (x, b, y) slice of each ternary function
TERNARY_B_SLICES = {
    "mhnp3": ("bbbb", "ffff", "ffff", "bbfb"),
    "mnp3_1": ("bbbb", "ffff", "ffff", "bbbb"),
    "mnp3_2": ("bbfb", "ffff", "ffff", "bbfb"),
    "np3_1": ("fffb", "ffff", "ffff", "fffb"),
    "np3_2": ("ffff", "ffff", "ffff", "ffff"),
}

NAMED = {
    "neg": "ftnb", "conf": "tfbn",
    "box": "tfff", "diamond": "tftt", "delta": "tfft", "nabla": "tftf",
    "id_b_to_n": "tfnn", "id_n_to_b": "tfbb", "id_n_to_t": "tftb", "id_b_to_t": "tfnt",
    "id_n_to_f": "tffb",
    "t_n_to_n": "ttnt", "t_b_to_b": "tttb", "t_t_to_n": "nttt", "t_t_to_b": "bttt",
    "const_t": "tttt", "const_f": "ffff", "const_n": "nnnn", "const_b": "bbbb",
    "meet": "tfnb" "ffff" "nfnf" "bffb",
    "join": "tttt" "tfnb" "tnnt" "tbtb",
    "imeet": "tnnt" "nfnf" "nnnn" "tfnb",
    "ijoin": "tbtb" "bffb" "tfnb" "bbbb",
    "eq_tf": "tfff" "ftff" "fftf" "ffft",
    "to_tf": "tfft" "tttt" "tttt" "tfft",
    "to_godel": "tfnb" "tttt" "tftb" "tfnt",
    "delta_nb": "ffff" "ffff" "ffft" "ffff",
}


def mhnp3_value(x, y, z):
    if y in (T, F):
        return F
    if y == N:
        if x == T:
            return N
        if x == N:
            return F if z == B else N
        return F
    return "tfnb".index(TERNARY_B_SLICES["mhnp3"][x][z])


def ternary_value(name, x, y, z):
    """Every ternary function agrees with mhnp3 off its (x, b, y) slice."""
    if y == B:
        return "tfnb".index(TERNARY_B_SLICES[name][x][z])
    return mhnp3_value(x, y, z)


def ternary_encoding(name):
    return "".join("tfnb"[ternary_value(name, *map(int, t))] for t in input_tuples(3))


def golden_encodings():
    out = {k: "".join(v) for k, v in BINARY_FIGURES.items()}
    out.update(NAMED)
    out.update({k: ternary_encoding(k) for k in TERNARY_B_SLICES})
    return out
