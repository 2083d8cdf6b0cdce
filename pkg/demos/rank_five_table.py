"""
The six 8-dimensional algebras with Tambara-Yamagami fusion rules, side by side.

K, C[D8] and C[Q8] are ordinary Hopf algebras; the _u versions keep the
multiplication and change the associator along the central involution.
Indicators of the 2-dimensional simple separate four of the six.
"""

from qhopf.cli import table6_markdown, table6_rows


def main():
    rows = table6_rows()
    print(table6_markdown(rows))
    prints = {name: tuple(str(v) for v in vals) for name, vals in rows.items()}
    print()
    print("distinct fingerprints:", len(set(prints.values())))
    print("C[D8]_u looks like C[Q8]:", prints["C[D8]_u"] == prints["C[Q8]"])
    print("C[Q8]_u looks like C[D8]:", prints["C[Q8]_u"] == prints["C[D8]"])


if __name__ == "__main__":
    main()
