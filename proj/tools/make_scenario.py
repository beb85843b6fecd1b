#!/usr/bin/env python3
"""Writes data/scenario.json: ten synthetic field reports over people,
places and organizations, with byte-exact mention spans."""

import json
import pathlib

PEOPLE = {
    "omar": "Mullah Omar", "khan": "Abdul Khan", "rahim": "Rahim Gul",
    "nasir": "Nasir Jan", "hakim": "Hakim Shah", "farid": "Farid Wali",
}
PLACES = {
    "kandahar": ("Kandahar", 31.61, 65.71), "kabul": ("Kabul", 34.53, 69.17),
    "quetta": ("Quetta", 30.18, 66.98), "herat": ("Herat", 34.35, 62.20),
    "peshawar": ("Peshawar", 34.01, 71.58),
}
ORGS = {"taliban": "Taliban", "alqaeda": "Al Qaeda", "hezb": "Hezb-e-Islami"}

# Each report is a list of sentence fragments; {view:id} marks a mention.
REPORTS = [
    "{person:omar} met {person:khan} in {location:kandahar}. Both are senior {org:taliban} figures; "
    "a cache of C-4 was reported nearby.",
    "{person:omar}, {person:khan} and {person:rahim} travelled from {location:kandahar} to {location:quetta} "
    "for a {org:taliban} council.",
    "{person:khan} and {person:rahim} were seen in {location:quetta} with couriers linked to "
    "{org:taliban} and {org:alqaeda}.",
    "{person:nasir} and {person:hakim} rented a house in {location:kabul} on behalf of {org:alqaeda}.",
    "{person:nasir}, {person:hakim} and {person:farid} moved C-4 between {location:kabul} and "
    "{location:peshawar} for {org:alqaeda}.",
    "{person:hakim} introduced {person:farid} to {org:hezb} contacts in {location:peshawar}.",
    "{person:omar} called {person:rahim} from {location:kandahar} about {org:taliban} finances.",
    "{person:farid} opened a shop in {location:herat} used by {org:hezb}.",
    "{person:nasir} met {person:khan} in {location:kabul}; informants tie them to {org:alqaeda} "
    "and {org:taliban}.",
    "{person:hakim} and {person:farid} shipped parts from {location:herat} to {location:peshawar} "
    "for {org:hezb} and {org:alqaeda}.",
]

LABELS = {"person": PEOPLE, "location": {k: v[0] for k, v in PLACES.items()}, "org": ORGS}


def render(template):
    text, occurrences, i = "", [], 0
    while i < len(template):
        if template[i] == "{":
            j = template.index("}", i)
            view, elem = template[i + 1:j].split(":")
            label = LABELS[view][elem]
            start = len(text.encode())
            text += label
            occurrences.append({"view_id": view, "element_id": elem, "start": start,
                                "end": len(text.encode())})
            i = j + 1
        else:
            text += template[i]
            i += 1
    return text, occurrences


def main():
    views = [
        {"view_id": "person", "view_type": "graph", "label": "People",
         "elements": [{"element_id": k, "label": v, "attrs": {}} for k, v in PEOPLE.items()]},
        {"view_id": "location", "view_type": "map", "label": "Locations",
         "elements": [{"element_id": k, "label": v[0], "attrs": {"lat": v[1], "lon": v[2]}}
                      for k, v in PLACES.items()]},
        {"view_id": "org", "view_type": "list", "label": "Organizations",
         "elements": [{"element_id": k, "label": v, "attrs": {}} for k, v in ORGS.items()]},
    ]
    relations = [{"view_a": a, "view_b": b, "derive": "cooccurrence"}
                 for a, b in [("person", "location"), ("person", "org"), ("location", "org")]]
    documents = []
    for n, template in enumerate(REPORTS, start=1):
        text, occ = render(template)
        documents.append({"doc_id": f"r{n:02d}", "title": f"Field report {n}", "text": text,
                          "occurrences": occ})
    bundle = {"dataset_id": "scenario", "views": views, "relations": relations, "documents": documents}
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "scenario.json"
    out.write_text(json.dumps(bundle, indent=1) + "\n")


if __name__ == "__main__":
    main()
