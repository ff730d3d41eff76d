"""Orders modulo prime powers: closed-form lifting against direct computation."""

from zicantor import GaussInt, lift_data, multiplicative_order, order_lift

cases = [(GaussInt(2), GaussInt(3, 2)), (GaussInt(2), GaussInt(7)), (GaussInt(3), GaussInt(1, 1)),
         (GaussInt(4, 1), GaussInt(1, 1))]
for alpha, gamma in cases:
    data = lift_data(alpha, gamma)
    lifted = [order_lift(data, n) for n in range(1, 9)]
    direct = [multiplicative_order(alpha, gamma**n) for n in range(1, 9)]
    print(f"alpha={alpha} gamma={gamma} type {data.cls.value}: d={data.d} m={data.m} chain={data.chain}")
    print(f"  lifted {lifted}")
    print(f"  direct {direct}  {'agree' if lifted == direct else 'DISAGREE'}")

# at 1+i the first squaring can jump by more than 2
print("\nnu_(1+i)(3**(2**k) - 1) for k = 0, 1, 2:", lift_data(3, GaussInt(1, 1)).chain, "then +2 per squaring")
