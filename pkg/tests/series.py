"""Map a reference-series record onto the matching pipeline call."""

from knockout_balance.balance import Clubs, Countries, TwoGroups, WithinCountry, balance_series, share_series
from knockout_balance.data import preset_scheme

# the country rectangle/W1 shares and HHI carry a known denominator gap
DEVIANT = {("country-shares", "rectangle", "W1"), ("country-hhi", "rectangle", "W1")}


def scope_of(ref):
    scope = ref["scope"]
    if scope == "clubs":
        return Clubs()
    if scope == "countries":
        return Countries()
    if scope == "top5-vs-rest":
        return TwoGroups()
    return WithinCountry(ref["entity"])


def computed(d, ref):
    """{label: value} for the series described by ``ref``."""
    scheme = preset_scheme(ref["scheme"])
    if ref["measure"] == "share":
        return dict(share_series(d, scope_of(ref), ref["entity"], ref["kind"], scheme))
    return balance_series(d, scope_of(ref), ref["kind"], scheme).as_dict()


def series_id(ref):
    parts = [ref["chart"], ref["kind"], ref["scheme"]]
    if ref["entity"]:
        parts.append(ref["entity"].replace(" ", "_"))
    return "-".join(parts)


def is_deviant(ref):
    return (ref["chart"], ref["kind"], ref["scheme"]) in DEVIANT


# Published top-five rankings over the full period as (entity, rank).
CLUB_TOP_FIVE = {
    ("euclidean", "W2"): [("Barcelona", 1), ("Real Madrid", 2), ("Bayern Munich", 3), ("Liverpool", 4), ("Chelsea", 5)],
    ("euclidean", "W3"): [("Barcelona", 1), ("Real Madrid", 2), ("Bayern Munich", 3), ("Chelsea", 4), ("Liverpool", 5)],
    ("euclidean", "W4"): [("Real Madrid", 1), ("Barcelona", 2), ("Bayern Munich", 2), ("Arsenal", 4), ("Chelsea", 5)],
    ("rectangle", "W1"): [("Barcelona", 1), ("Real Madrid", 1), ("Liverpool", 3), ("Bayern Munich", 4), ("Chelsea", 4)],
    ("rectangle", "W2"): [("Barcelona", 1), ("Real Madrid", 2), ("Bayern Munich", 3), ("Chelsea", 4), ("Liverpool", 5)],
    ("rectangle", "W3"): [("Barcelona", 1), ("Bayern Munich", 2), ("Real Madrid", 3), ("Arsenal", 4), ("Chelsea", 4)],
}

COUNTRY_TOP_FIVE = {
    ("euclidean", "W2"): ["Spain", "England", "Italy", "Germany", "France"],
    ("euclidean", "W3"): ["England", "Spain", "Italy", "Germany", "France"],
    ("euclidean", "W4"): ["England", "Spain", "Italy", "Germany", "France"],
    ("rectangle", "W1"): ["Spain", "England", "Italy", "Germany", "France"],
    ("rectangle", "W2"): ["Spain", "England", "Italy", "Germany", "France"],
    ("rectangle", "W3"): ["England", "Spain", "Italy", "Germany", "France"],
}
