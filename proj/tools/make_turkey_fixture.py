#!/usr/bin/env python3
"""Writes data/pe1_40c_10d.json and the matching 10-day tour fixture.

City attributes follow the 40-city campaign table. Travel times and
costs are synthesized from approximate coordinates: fastest of a road model
(great-circle km x 1.3 at 80 km/h) and, between two province centres more than
250 km apart, an air model (150 min overhead + 600 km/h).
"""
import json
import math
import os
import sys

# name, population, table reward, meeting hours, CF, lat, lon, parent
CITIES = [
    ("Ankara", 5270575, 1505, 2, 5, 39.93, 32.86, None),
    ("İstanbul", 14657434, 2370, 2, 5, 41.01, 28.98, None),
    ("İzmir", 4168415, 1295, 2, 5, 38.42, 27.14, None),
    ("Bursa", 2842547, 1040, 1.5, 5, 40.19, 29.06, None),
    ("Hatay", 1533507, 1000, 1.5, 5, 36.20, 36.16, None),
    ("İskenderun", 247220, 1000, 1, 5, 36.59, 36.17, "Hatay"),
    ("Antalya", 2288456, 935, 1.5, 5, 36.90, 30.70, None),
    ("Alanya", 134396, 935, 1, 5, 36.54, 32.00, "Antalya"),
    ("Adana", 2183167, 736, 1.5, 4, 37.00, 35.32, None),
    ("Kahramanmaraş", 1096610, 680, 1.5, 4, 37.58, 36.94, None),
    ("Gaziantep", 1931836, 675, 1.5, 3, 37.07, 37.38, None),
    ("Denizli", 993442, 660, 1, 4, 37.78, 29.09, None),
    ("Aydın", 1053506, 660, 1.5, 4, 37.85, 27.85, None),
    ("Kocaeli", 1780055, 645, 1.5, 3, 40.77, 29.92, None),
    ("Gebze", 357743, 645, 1, 3, 40.80, 29.43, "Kocaeli"),
    ("Muğla", 908877, 640, 1, 4, 37.22, 28.36, None),
    ("Çorlu", 273362, 640, 1, 4, 41.16, 27.80, None),
    ("Mersin", 1745221, 630, 1.5, 3, 36.81, 34.64, None),
    ("Ordu", 728949, 580, 1.5, 4, 40.98, 37.88, None),
    ("Manisa", 1380366, 570, 1, 4, 38.61, 27.43, None),
    ("Balıkesir", 1186688, 525, 1.5, 3, 39.65, 27.88, None),
    ("Kastamonu", 372633, 500, 1, 4, 41.38, 33.78, None),
    ("Edirne", 402537, 500, 1, 4, 41.68, 26.56, None),
    ("Kars", 292660, 480, 1, 4, 40.60, 43.10, None),
    ("Eskişehir", 826716, 465, 1, 3, 39.78, 30.52, None),
    ("Erzincan", 222918, 460, 1, 4, 39.75, 39.49, None),
    ("Afyon", 709015, 435, 1, 3, 38.76, 30.54, None),
    ("Adıyaman", 602774, 420, 1, 2, 37.76, 38.28, None),
    ("Diyarbakır", 1654196, 410, 1.5, 2, 37.91, 40.23, None),
    ("Çanakkale", 513341, 405, 1, 3, 40.15, 26.41, None),
    ("İsparta", 421766, 375, 1, 3, 37.76, 30.55, None),
    ("Giresun", 426686, 375, 1, 3, 40.91, 38.39, None),
    ("Kayseri", 1341056, 370, 1.5, 2, 38.73, 35.48, None),
    ("Konya", 2130544, 362, 1.5, 2, 37.87, 32.48, None),
    ("Amasya", 322167, 360, 1, 3, 40.65, 35.83, None),
    ("Bolu", 291095, 360, 1, 3, 40.74, 31.61, None),
    ("Niğde", 346114, 360, 1, 3, 37.97, 34.68, None),
    ("Bartın", 190708, 330, 1, 3, 41.63, 32.34, None),
    ("Malatya", 772904, 300, 1, 2, 38.35, 38.31, None),
    ("Kırşehir", 225562, 230, 1, 2, 39.15, 34.16, None),
]

# Rewards that the derivation rule does not reproduce, plus Çorlu whose parent
# province is not part of the instance.
OVERRIDES = {"Manisa", "Adıyaman", "Çorlu"}
BIG = {"İstanbul", "Ankara", "İzmir"}
CRIT = {2: "noncritical", 3: "negative_critical", 4: "positive_critical", 5: "pos_neg_critical"}

TOUR = [
    (["Ankara", "Hatay", "İskenderun"], ["Ankara", "Hatay", "İskenderun"]),
    (["İskenderun", "Adana", "İstanbul"], ["Adana", "İstanbul"]),
    (["İstanbul", "Kocaeli", "Bursa", "Balıkesir"], ["Kocaeli", "Bursa", "Balıkesir"]),
    (["Balıkesir", "Manisa", "İzmir", "Aydın", "Muğla"], ["Manisa", "İzmir", "Aydın"]),
    (["Muğla", "Denizli", "Antalya", "İsparta"], ["Muğla", "Denizli", "Antalya"]),
    (["İsparta", "Afyon", "Eskişehir", "Ankara"], ["İsparta", "Afyon", "Eskişehir"]),
    (["Ankara", "Gebze", "İstanbul"], ["Ankara", "Gebze"]),
    (["İstanbul", "Gaziantep", "Kahramanmaraş"], ["İstanbul", "Gaziantep", "Kahramanmaraş"]),
    (["Kahramanmaraş", "Hatay", "Adana", "Mersin"], ["Hatay", "Adana"]),
    (["Mersin"], ["Mersin"]),
]


def great_circle_km(a, b):
    r = 6371.0
    la1, lo1, la2, lo2 = map(math.radians, (a[5], a[6], b[5], b[6]))
    h = math.sin((la2 - la1) / 2) ** 2 + math.cos(la1) * math.cos(la2) * math.sin((lo2 - lo1) / 2) ** 2
    return 2 * r * math.asin(math.sqrt(h))


def arc(a, b):
    km = great_circle_km(a, b)
    road_km = 1.3 * km
    road_min = road_km / 80.0 * 60.0
    road_cost = 0.1 * road_km
    if a[7] is None and b[7] is None and km > 250:
        air_min = 150.0 + km / 600.0 * 60.0
        if air_min < road_min:
            return math.floor(air_min + 0.5), math.floor(50 + 0.04 * km + 0.5)
    return math.floor(road_min + 0.5), math.floor(road_cost + 0.5)


def main(out_dir):
    ids = {c[0]: k + 1 for k, c in enumerate(CITIES)}
    n = len(CITIES)
    cities = []
    for k, c in enumerate(CITIES):
        name, pop, reward, hours, cf = c[:5]
        size = "big" if name in BIG else ("small" if pop < 1000000 else "midsize")
        cities.append({
            "id": k + 1, "name": name, "population": pop, "criticality": CRIT[cf],
            "size_class": size, "meeting_minutes": int(hours * 60),
            "parent_id": ids[c[7]] if c[7] else None,
            "base_reward": reward if name in OVERRIDES else None,
        })
    minutes = [[0] * (n + 1) for _ in range(n + 1)]
    cost = [[0] * (n + 1) for _ in range(n + 1)]
    for i, a in enumerate(CITIES, 1):
        for j, b in enumerate(CITIES, 1):
            if i != j:
                minutes[i][j], cost[i][j] = arc(a, b)
    params = {
        "days": 10, "capital_id": 1, "max_tour_minutes": 840, "max_meetings_per_day": 4,
        "kappa": 5, "repeat_depreciation_K": 2, "cost_normalizer_Kbar": 1,
        "min_population": 78550, "reward_direction": "front_loaded",
        "require_daily_meeting": True, "end_at_capital": False,
    }
    lines = ["{", '  "name": "PE.I 40C-10D",', '  "params": ' + json.dumps(params, ensure_ascii=False) + ",",
             '  "cities": [']
    lines += ["    " + json.dumps(c, ensure_ascii=False) + ("," if k + 1 < n else "") for k, c in enumerate(cities)]
    lines.append("  ],")
    for key, mat, last in (("travel_cost", cost, False), ("travel_minutes", minutes, True)):
        lines.append('  "%s": [' % key)
        lines += ["    " + json.dumps(row) + ("," if i + 1 < len(mat) else "") for i, row in enumerate(mat)]
        lines.append("  ]" + ("" if last else ","))
    lines.append("}")
    with open(os.path.join(out_dir, "pe1_40c_10d.json"), "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")

    days = [{"route": [ids[x] for x in r], "meetings": sorted(ids[x] for x in m)} for r, m in TOUR]
    sol = ['{', '  "instance": "PE.I 40C-10D",', '  "days": [']
    sol += ["    " + json.dumps(d) + ("," if k + 1 < len(days) else "") for k, d in enumerate(days)]
    sol += ["  ],", '  "params_echo": {}', "}"]
    with open(os.path.join(out_dir, "pe1_40c_10d_tours.json"), "w", encoding="utf-8") as f:
        f.write("\n".join(sol) + "\n")

    sigma = {c[0]: c[3] * 60 for c in CITIES}
    for t, (r, m) in enumerate(TOUR, 1):
        dur = sum(sigma[x] for x in m) + sum(minutes[ids[a]][ids[b]] for a, b in zip(r, r[1:]))
        print("day %d duration %d" % (t, dur), file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data"))
