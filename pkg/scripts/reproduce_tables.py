"""Print both small-example tables next to their reference values."""

from renyibounds.cli import TABLE1_EXPECTED, TABLE2_EXPECTED, table1_rows, table2_rows


def main():
    print("alpha  implicit  (ref)    explicit  (ref)")
    for a, imp, exp_ in table1_rows():
        ri, re_ = TABLE1_EXPECTED[a]
        print(f"{a:>5}  {imp:.5f}  ({ri:.4f})  {exp_:.5f}  ({re_:.4f})")
    print()
    print("alpha  lower    eps      upper    (ref)")
    for a, lo, eps, up in table2_rows():
        ref = ", ".join(f"{v:.4f}" for v in TABLE2_EXPECTED[a])
        print(f"{a:>5}  {lo:.5f}  {eps:.5f}  {up:.5f}  ({ref})")


if __name__ == "__main__":
    main()
