"""Bundled site and vocabulary fixtures.

Two congressional directories ship with the engine:

* ``mini-congress`` — a hand-written 8-leaf site (Alaska, American Samoa,
  Georgia) small enough for exhaustive oracles, shaped so that "Democrat"
  prunes Alaska, "Senate" additionally prunes American Samoa, and Georgia
  is left with a single Democratic Senate seat.
* ``full-congress`` — a generated 540-leaf directory (100 senators,
  435 representatives seated per the 2000-census apportionment, and
  5 territorial delegates), four levels deep: state, branch, party, seat.

Party labels in the generated site are synthetic: a stable hash draws
Democrat/Republican, with a handful of pinned seats (e.g. Florida's
District 17 is a Democrat, Vermont seats an Independent) that scenario
tests rely on.
"""

from __future__ import annotations

import hashlib

from .site import SiteTree, load_site

HOUSE_SEATS = {
    "Alabama": 7, "Alaska": 1, "Arizona": 8, "Arkansas": 4, "California": 53,
    "Colorado": 7, "Connecticut": 5, "Delaware": 1, "Florida": 25, "Georgia": 13,
    "Hawaii": 2, "Idaho": 2, "Illinois": 19, "Indiana": 9, "Iowa": 5,
    "Kansas": 4, "Kentucky": 6, "Louisiana": 7, "Maine": 2, "Maryland": 8,
    "Massachusetts": 10, "Michigan": 15, "Minnesota": 8, "Mississippi": 4,
    "Missouri": 9, "Montana": 1, "Nebraska": 3, "Nevada": 3, "New Hampshire": 2,
    "New Jersey": 13, "New Mexico": 3, "New York": 29, "North Carolina": 13,
    "North Dakota": 1, "Ohio": 18, "Oklahoma": 5, "Oregon": 5, "Pennsylvania": 19,
    "Rhode Island": 2, "South Carolina": 6, "South Dakota": 1, "Tennessee": 9,
    "Texas": 32, "Utah": 3, "Vermont": 1, "Virginia": 11, "Washington": 9,
    "West Virginia": 3, "Wisconsin": 8, "Wyoming": 1,
}

STATE_ABBR = {
    "Alabama": "AL", "Alaska": "AK", "Arizona": "AZ", "Arkansas": "AR",
    "California": "CA", "Colorado": "CO", "Connecticut": "CT", "Delaware": "DE",
    "Florida": "FL", "Georgia": "GA", "Hawaii": "HI", "Idaho": "ID",
    "Illinois": "IL", "Indiana": "IN", "Iowa": "IA", "Kansas": "KS",
    "Kentucky": "KY", "Louisiana": "LA", "Maine": "ME", "Maryland": "MD",
    "Massachusetts": "MA", "Michigan": "MI", "Minnesota": "MN", "Mississippi": "MS",
    "Missouri": "MO", "Montana": "MT", "Nebraska": "NE", "Nevada": "NV",
    "New Hampshire": "NH", "New Jersey": "NJ", "New Mexico": "NM", "New York": "NY",
    "North Carolina": "NC", "North Dakota": "ND", "Ohio": "OH", "Oklahoma": "OK",
    "Oregon": "OR", "Pennsylvania": "PA", "Rhode Island": "RI", "South Carolina": "SC",
    "South Dakota": "SD", "Tennessee": "TN", "Texas": "TX", "Utah": "UT",
    "Vermont": "VT", "Virginia": "VA", "Washington": "WA", "West Virginia": "WV",
    "Wisconsin": "WI", "Wyoming": "WY",
}

TERRITORIES = {
    "American Samoa": "AS",
    "District of Columbia": "DC",
    "Guam": "GU",
    "Puerto Rico": "PR",
    "Virgin Islands": "VI",
}

# Seats whose party the scenario fixtures depend on; everything else is hashed.
_PINNED_PARTIES = {
    ("Florida", "House", 17): "Democrat",
    ("New York", "Senate", "Senior"): "Democrat",
    ("New York", "Senate", "Junior"): "Democrat",
    ("Vermont", "Senate", "Senior"): "Democrat",
    ("Vermont", "Senate", "Junior"): "Independent",
    ("Vermont", "House", 1): "Independent",
}


def _url(leaf_id: str) -> str:
    return f"https://example.gov/officials/{leaf_id}"


def _leaf(leaf_id: str, title: str) -> dict:
    return {"leaf": {"id": leaf_id, "title": title, "url": _url(leaf_id)}}


def mini_congress_document() -> dict:
    """The 8-leaf hand-built directory used across the test suite."""
    return {
        "format": "extempore-site/1",
        "id": "mini-congress",
        "title": "Mini congressional directory",
        "facets": ["state", "branch", "party", "seat"],
        "root": {
            "solicits": "state",
            "edges": [
                {"label": "Alaska", "child": {"solicits": "branch", "edges": [
                    {"label": "Senate", "child": {"solicits": "party", "edges": [
                        {"label": "Republican", "child": {"solicits": "seat", "edges": [
                            {"label": "Senior", "child": _leaf("AK-SS", "Senior Senator from Alaska")},
                            {"label": "Junior", "child": _leaf("AK-JS", "Junior Senator from Alaska")},
                        ]}},
                    ]}},
                    {"label": "House", "child": {"solicits": "party", "edges": [
                        {"label": "Republican", "child": {"solicits": "seat", "edges": [
                            {"label": "At-large", "child": _leaf("AK-H1", "At-large Representative from Alaska")},
                        ]}},
                    ]}},
                ]}},
                {"label": "American Samoa", "child": {"solicits": "branch", "edges": [
                    {"label": "House", "child": {"solicits": "party", "edges": [
                        {"label": "Democrat", "child": {"solicits": "seat", "edges": [
                            {"label": "Delegate", "child": _leaf("AS-H1", "Delegate from American Samoa")},
                        ]}},
                    ]}},
                ]}},
                {"label": "Georgia", "child": {"solicits": "branch", "edges": [
                    {"label": "Senate", "child": {"solicits": "party", "edges": [
                        {"label": "Democrat", "child": {"solicits": "seat", "edges": [
                            {"label": "Senior", "child": _leaf("GA-SS", "Senior Senator from Georgia")},
                        ]}},
                        {"label": "Republican", "child": {"solicits": "seat", "edges": [
                            {"label": "Junior", "child": _leaf("GA-JS", "Junior Senator from Georgia")},
                        ]}},
                    ]}},
                    {"label": "House", "child": {"solicits": "party", "edges": [
                        {"label": "Republican", "child": {"solicits": "seat", "edges": [
                            {"label": "District 1", "child": _leaf("GA-H1", "Representative from Georgia District 1")},
                        ]}},
                        {"label": "Democrat", "child": {"solicits": "seat", "edges": [
                            {"label": "District 2", "child": _leaf("GA-H2", "Representative from Georgia District 2")},
                        ]}},
                    ]}},
                ]}},
            ],
        },
    }


def _party_for(region: str, branch: str, seat_key) -> str:
    pinned = _PINNED_PARTIES.get((region, branch, seat_key))
    if pinned:
        return pinned
    digest = hashlib.sha256(f"{region}|{branch}|{seat_key}".encode()).digest()
    return "Democrat" if digest[0] % 2 == 0 else "Republican"


def _grouped_seat_edges(members: list[tuple[str, str, str, str]]) -> list[dict]:
    """Group (party, seat label, leaf id, title) rows into party -> seat edges."""
    parties: dict[str, list[tuple[str, str, str]]] = {}
    for party, seat, leaf_id, title in members:
        parties.setdefault(party, []).append((seat, leaf_id, title))
    return [
        {"label": party, "child": {"solicits": "seat", "edges": [
            {"label": seat, "child": _leaf(leaf_id, title)} for seat, leaf_id, title in rows
        ]}}
        for party, rows in parties.items()
    ]


def full_congress_document() -> dict:
    """Generate the 540-leaf, depth-4 congressional directory."""
    regions = sorted(list(HOUSE_SEATS) + list(TERRITORIES))
    state_edges = []
    for region in regions:
        abbr = STATE_ABBR.get(region) or TERRITORIES[region]
        branch_edges = []

        house_members = []
        if region in TERRITORIES:
            house_members.append((
                _party_for(region, "House", 1),
                "Delegate",
                f"{abbr}-H1",
                f"Delegate from {region}",
            ))
        else:
            seats = HOUSE_SEATS[region]
            for district in range(1, seats + 1):
                seat = "At-large" if seats == 1 else f"District {district}"
                title = (
                    f"At-large Representative from {region}"
                    if seats == 1
                    else f"Representative from {region} District {district}"
                )
                house_members.append((
                    _party_for(region, "House", district), seat, f"{abbr}-H{district}", title,
                ))
        branch_edges.append({
            "label": "House",
            "child": {"solicits": "party", "edges": _grouped_seat_edges(house_members)},
        })

        if region not in TERRITORIES:
            senate_members = [
                (_party_for(region, "Senate", "Senior"), "Senior", f"{abbr}-SS",
                 f"Senior Senator from {region}"),
                (_party_for(region, "Senate", "Junior"), "Junior", f"{abbr}-JS",
                 f"Junior Senator from {region}"),
            ]
            branch_edges.append({
                "label": "Senate",
                "child": {"solicits": "party", "edges": _grouped_seat_edges(senate_members)},
            })

        state_edges.append({
            "label": region,
            "child": {"solicits": "branch", "edges": branch_edges},
        })

    return {
        "format": "extempore-site/1",
        "id": "full-congress",
        "title": "Congressional directory (synthetic, 540 officials)",
        "facets": ["state", "branch", "party", "seat"],
        "root": {"solicits": "state", "edges": state_edges},
    }


_COMMON_SYNONYMS = [
    {"token": "Democratic", "facet": "party", "value": "Democrat"},
    {"token": "Democrats", "facet": "party", "value": "Democrat"},
    {"token": "Republicans", "facet": "party", "value": "Republican"},
    {"token": "Senator", "facet": "branch", "value": "Senate"},
    {"token": "Senators", "facet": "branch", "value": "Senate"},
    {"token": "Representative", "facet": "branch", "value": "House"},
    {"token": "Representatives", "facet": "branch", "value": "House"},
    {"token": "Junior seat", "facet": "seat", "value": "Junior"},
    {"token": "Senior seat", "facet": "seat", "value": "Senior"},
]

_COMMON_FDS = [
    {"facet": "seat", "value": "Junior", "implies": [{"facet": "branch", "value": "Senate"}]},
    {"facet": "seat", "value": "Senior", "implies": [{"facet": "branch", "value": "Senate"}]},
    {"facet": "seat", "value": "At-large", "implies": [{"facet": "branch", "value": "House"}]},
    {"facet": "seat", "value": "Delegate", "implies": [{"facet": "branch", "value": "House"}]},
]


def mini_vocab_document() -> dict:
    return {
        "format": "extempore-vocab/1",
        "synonyms": list(_COMMON_SYNONYMS),
        "abbreviations": [
            {"token": "AK", "facet": "state", "value": "Alaska"},
            {"token": "AS", "facet": "state", "value": "American Samoa"},
            {"token": "GA", "facet": "state", "value": "Georgia"},
        ],
        "fds": list(_COMMON_FDS),
    }


def full_congress_vocab_document() -> dict:
    abbreviations = [
        {"token": abbr, "facet": "state", "value": region}
        for region, abbr in sorted({**STATE_ABBR, **TERRITORIES}.items())
    ]
    return {
        "format": "extempore-vocab/1",
        "synonyms": list(_COMMON_SYNONYMS),
        "abbreviations": abbreviations,
        "fds": list(_COMMON_FDS),
    }


def mini_congress_tree() -> SiteTree:
    return load_site(mini_congress_document())


def full_congress_tree() -> SiteTree:
    return load_site(full_congress_document())
