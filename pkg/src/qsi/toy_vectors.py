"""Golden data for the bundled worked example: one full key exchange over
F_67 with m = 3, whose shared key is j = 57.

The responder used the single-automorphism exponent word (70, 0, 0, 0), so
the responder's embedding matrix equals aut1^70 @ public_embedding. The
responder-side hyperplane printed alongside the original example is known to
be inconsistent (coefficients exceed the modulus, half the coordinates are
missing, and no completion of the printed half lies in the responder
matrix's cokernel), so consumers regenerate it from the cokernel of the
responder embedding instead; any choice there cuts the same curve.

Forms are transcribed with variable blocks (x0, x1; x2, x3): x0, x1 carry
the first bidegree, x2, x3 the second. On the initiator side the original
transcript uses the opposite block order: the initiator component computed
in this package's convention matches SHARED_COMPONENT_INITIATOR only after
swapping the blocks (the shared key is insensitive to the swap).
"""

MODULUS = 67
DEGREE = 3
SHARED_J = 57
RESPONDER_EXPONENTS = (70, 0, 0, 0)

# 20x20 Veronese frame (diagnostic only; the exchange needs the matrices below)
FRAME = [
    [56, 21, 22, 46, 19, 30, 54, 59, 17, 23, 35, 17, 18, 60, 13, 54, 27, 43, 55, 16],
    [42, 1, 54, 49, 3, 29, 9, 1, 34, 65, 35, 65, 34, 47, 27, 4, 25, 53, 27, 17],
    [29, 3, 59, 56, 50, 44, 36, 27, 63, 33, 3, 15, 4, 36, 28, 32, 3, 50, 29, 56],
    [62, 53, 21, 31, 23, 50, 28, 37, 13, 62, 16, 27, 29, 27, 66, 44, 40, 42, 60, 55],
    [9, 2, 58, 4, 50, 2, 63, 34, 10, 1, 27, 34, 14, 17, 11, 61, 4, 48, 36, 61],
    [35, 63, 13, 66, 50, 14, 23, 42, 23, 58, 22, 14, 6, 29, 52, 58, 36, 9, 42, 0],
    [61, 64, 15, 65, 57, 44, 54, 60, 11, 4, 25, 37, 29, 5, 56, 9, 9, 11, 57, 31],
    [40, 42, 2, 48, 28, 26, 31, 9, 8, 15, 62, 31, 53, 46, 12, 39, 46, 52, 30, 8],
    [29, 28, 40, 29, 36, 62, 32, 57, 47, 25, 11, 10, 55, 8, 39, 43, 3, 66, 64, 29],
    [61, 63, 24, 42, 43, 15, 18, 63, 21, 64, 60, 14, 26, 8, 12, 0, 23, 61, 28, 66],
    [55, 21, 48, 0, 47, 17, 20, 22, 61, 65, 49, 5, 24, 43, 51, 24, 62, 14, 41, 42],
    [34, 25, 43, 37, 36, 11, 16, 11, 65, 59, 61, 54, 22, 66, 66, 49, 28, 20, 26, 3],
    [0, 38, 53, 16, 44, 46, 21, 64, 54, 5, 39, 2, 64, 28, 61, 30, 53, 1, 34, 58],
    [18, 65, 52, 54, 6, 31, 43, 3, 46, 7, 5, 26, 29, 55, 39, 65, 12, 4, 33, 63],
    [49, 59, 43, 54, 46, 14, 16, 4, 30, 40, 29, 1, 48, 59, 22, 2, 8, 14, 30, 33],
    [34, 46, 63, 8, 14, 51, 1, 29, 6, 52, 46, 47, 25, 9, 13, 28, 8, 33, 25, 34],
    [48, 31, 6, 62, 34, 49, 16, 60, 32, 21, 55, 22, 2, 23, 35, 20, 62, 0, 64, 15],
    [33, 45, 48, 62, 5, 0, 1, 65, 66, 35, 43, 34, 5, 18, 11, 57, 41, 6, 53, 41],
    [12, 24, 28, 36, 4, 18, 31, 34, 1, 21, 65, 13, 1, 31, 43, 9, 23, 43, 66, 13],
    [41, 9, 45, 49, 6, 38, 40, 4, 50, 45, 10, 14, 13, 18, 40, 23, 6, 33, 13, 39],
]

# 20x20 automorphism of the initiator's Veronese variety
AUT1 = [
    [60, 55, 21, 17, 53, 5, 30, 53, 30, 25, 36, 1, 40, 46, 14, 36, 27, 7, 54, 54],
    [0, 59, 51, 65, 25, 62, 57, 4, 23, 55, 8, 53, 8, 34, 36, 24, 36, 33, 55, 60],
    [56, 34, 7, 35, 10, 39, 18, 64, 62, 49, 23, 10, 41, 28, 0, 12, 1, 52, 51, 51],
    [61, 42, 35, 43, 29, 44, 30, 35, 28, 61, 6, 48, 30, 54, 21, 37, 8, 21, 48, 0],
    [37, 20, 42, 4, 23, 25, 26, 47, 3, 46, 31, 49, 13, 12, 40, 21, 10, 66, 12, 38],
    [27, 39, 26, 35, 4, 43, 35, 48, 5, 57, 56, 28, 55, 65, 15, 23, 27, 43, 41, 53],
    [54, 9, 7, 15, 21, 21, 8, 57, 40, 22, 50, 55, 29, 46, 39, 42, 44, 21, 39, 32],
    [3, 17, 9, 43, 3, 48, 38, 49, 24, 5, 20, 60, 56, 57, 31, 18, 53, 57, 21, 43],
    [63, 20, 4, 44, 2, 30, 16, 26, 21, 23, 40, 42, 6, 28, 26, 23, 40, 62, 54, 1],
    [23, 6, 0, 50, 47, 46, 29, 17, 62, 62, 32, 55, 26, 22, 27, 65, 29, 25, 65, 11],
    [66, 16, 65, 60, 8, 34, 21, 43, 49, 64, 3, 20, 37, 49, 1, 9, 58, 39, 20, 5],
    [38, 19, 30, 22, 11, 15, 20, 9, 16, 1, 65, 12, 17, 1, 56, 41, 4, 21, 44, 19],
    [15, 16, 16, 4, 26, 61, 62, 16, 6, 36, 33, 33, 30, 2, 35, 56, 65, 59, 33, 46],
    [44, 22, 9, 56, 57, 11, 10, 6, 14, 22, 24, 58, 49, 32, 35, 58, 4, 14, 53, 48],
    [65, 26, 24, 24, 48, 57, 14, 44, 0, 39, 18, 45, 35, 19, 21, 59, 56, 63, 1, 3],
    [39, 24, 5, 34, 46, 14, 31, 14, 59, 40, 1, 38, 43, 46, 40, 21, 33, 65, 20, 36],
    [54, 55, 41, 7, 17, 58, 13, 30, 1, 66, 53, 41, 15, 47, 66, 65, 58, 34, 0, 41],
    [55, 37, 41, 32, 11, 42, 38, 25, 43, 9, 33, 7, 31, 25, 59, 3, 45, 61, 36, 36],
    [39, 26, 46, 66, 50, 5, 52, 14, 2, 3, 15, 25, 22, 27, 65, 4, 56, 58, 27, 60],
    [46, 35, 61, 39, 20, 51, 21, 50, 55, 29, 18, 38, 12, 46, 59, 51, 2, 43, 15, 31],
]

# 20x16 secret embedding matrix of the initiator
SECRET_EMBEDDING = [
    [9, 17, 23, 59, 50, 10, 11, 36, 64, 56, 27, 16, 40, 62, 8, 6],
    [34, 48, 49, 26, 25, 58, 16, 33, 36, 2, 43, 4, 62, 39, 17, 34],
    [3, 49, 33, 24, 26, 64, 66, 46, 63, 17, 61, 49, 14, 43, 65, 23],
    [37, 45, 12, 60, 27, 5, 29, 3, 33, 51, 7, 30, 11, 47, 40, 44],
    [54, 57, 19, 25, 13, 14, 37, 23, 24, 39, 21, 41, 58, 41, 65, 64],
    [40, 18, 2, 44, 64, 32, 17, 15, 42, 15, 27, 30, 45, 22, 39, 49],
    [46, 10, 38, 59, 31, 36, 1, 28, 18, 51, 46, 19, 5, 8, 31, 26],
    [45, 65, 39, 32, 35, 6, 18, 65, 12, 0, 17, 59, 65, 4, 26, 5],
    [4, 14, 13, 27, 43, 58, 63, 66, 41, 57, 39, 12, 30, 43, 25, 7],
    [4, 1, 6, 25, 49, 11, 40, 48, 20, 30, 52, 29, 35, 23, 35, 3],
    [31, 5, 63, 25, 63, 2, 20, 62, 32, 13, 43, 24, 18, 14, 40, 14],
    [21, 38, 7, 31, 46, 50, 3, 27, 8, 59, 47, 21, 29, 53, 22, 1],
    [9, 55, 21, 31, 48, 5, 20, 66, 9, 33, 28, 0, 45, 25, 7, 48],
    [19, 48, 3, 13, 6, 20, 1, 33, 37, 12, 61, 63, 36, 34, 55, 35],
    [21, 9, 62, 15, 20, 7, 24, 62, 64, 9, 30, 31, 1, 46, 62, 60],
    [37, 52, 30, 58, 33, 46, 63, 28, 38, 22, 14, 36, 12, 30, 10, 59],
    [33, 36, 36, 55, 66, 15, 15, 56, 17, 56, 62, 21, 7, 39, 20, 29],
    [30, 40, 53, 59, 8, 9, 62, 28, 13, 31, 4, 41, 44, 24, 47, 51],
    [50, 41, 5, 5, 42, 40, 62, 20, 36, 59, 2, 41, 23, 62, 25, 42],
    [24, 66, 52, 46, 24, 23, 64, 8, 45, 52, 59, 29, 10, 4, 33, 12],
]

# hyperplane through the secret embedding's image (coefficients of x0..x19)
HYPERPLANE = [
    1, 0, 0, -21, 0, -15, -32, 16, -10, 5,
    11, 16, 1, -4, -28, -20, 18, 8, 1, 32,
]

# 20x16 public embedding matrix of the initiator
PUBLIC_EMBEDDING = [
    [28, 32, 4, 38, 26, 36, 6, 20, 1, 2, 22, 27, 23, 35, 10, 24],
    [29, 3, 48, 59, 19, 11, 17, 23, 10, 61, 12, 50, 21, 17, 46, 35],
    [27, 21, 45, 43, 33, 48, 4, 43, 64, 37, 34, 46, 60, 3, 41, 27],
    [4, 45, 65, 55, 6, 40, 11, 30, 41, 31, 19, 23, 42, 41, 11, 1],
    [53, 14, 44, 37, 15, 49, 57, 26, 55, 22, 29, 45, 44, 9, 59, 30],
    [45, 60, 22, 66, 26, 27, 60, 60, 54, 63, 62, 64, 4, 18, 44, 18],
    [42, 33, 47, 53, 52, 65, 45, 28, 5, 21, 58, 45, 49, 31, 22, 27],
    [30, 13, 6, 6, 37, 40, 38, 51, 2, 43, 61, 6, 52, 4, 48, 34],
    [66, 54, 47, 64, 13, 20, 66, 23, 31, 36, 55, 42, 11, 27, 39, 17],
    [29, 28, 31, 44, 54, 9, 60, 44, 64, 1, 59, 12, 38, 41, 57, 32],
    [10, 18, 2, 58, 38, 5, 35, 14, 55, 16, 22, 61, 18, 13, 55, 46],
    [28, 53, 39, 66, 55, 0, 46, 21, 7, 49, 30, 1, 60, 15, 37, 63],
    [54, 24, 9, 29, 24, 42, 51, 50, 35, 10, 50, 18, 16, 44, 10, 7],
    [64, 24, 63, 33, 49, 14, 47, 35, 33, 30, 59, 4, 20, 24, 66, 1],
    [59, 37, 43, 25, 55, 7, 21, 26, 62, 44, 64, 45, 66, 4, 46, 62],
    [7, 47, 2, 13, 0, 40, 21, 1, 11, 7, 56, 14, 60, 41, 21, 62],
    [51, 20, 31, 4, 55, 36, 27, 22, 61, 42, 32, 51, 56, 20, 26, 5],
    [36, 46, 36, 42, 59, 65, 33, 58, 43, 20, 40, 50, 15, 7, 11, 63],
    [18, 15, 53, 12, 3, 8, 50, 66, 55, 39, 42, 8, 10, 31, 1, 29],
    [66, 34, 55, 50, 26, 57, 3, 35, 30, 41, 39, 55, 35, 40, 40, 27],
]

# 20x16 responder embedding matrix: aut1^70 @ public_embedding
RESPONDER_EMBEDDING = [
    [46, 26, 7, 53, 4, 8, 3, 63, 15, 66, 49, 2, 4, 9, 56, 4],
    [61, 24, 1, 50, 17, 19, 48, 28, 38, 45, 44, 35, 36, 49, 4, 48],
    [22, 28, 65, 20, 18, 24, 4, 65, 37, 17, 57, 7, 29, 59, 20, 35],
    [58, 21, 5, 64, 66, 8, 17, 20, 27, 17, 14, 50, 53, 40, 28, 18],
    [25, 56, 30, 19, 39, 62, 44, 21, 37, 1, 22, 43, 8, 13, 30, 19],
    [43, 14, 16, 44, 60, 60, 21, 10, 48, 65, 53, 20, 46, 12, 35, 44],
    [27, 52, 64, 40, 51, 25, 13, 62, 48, 57, 53, 14, 43, 25, 42, 50],
    [38, 56, 61, 42, 26, 42, 29, 20, 23, 34, 56, 34, 29, 60, 25, 24],
    [15, 35, 27, 50, 4, 7, 56, 25, 66, 36, 47, 38, 38, 41, 3, 28],
    [10, 38, 43, 46, 56, 37, 28, 48, 44, 51, 23, 52, 5, 48, 22, 50],
    [34, 50, 50, 37, 12, 29, 11, 40, 31, 5, 52, 13, 53, 58, 29, 52],
    [37, 20, 40, 22, 49, 37, 58, 0, 8, 19, 26, 34, 52, 35, 19, 53],
    [19, 39, 22, 65, 5, 7, 62, 35, 51, 43, 16, 35, 48, 43, 38, 44],
    [60, 3, 49, 48, 44, 9, 39, 26, 39, 50, 24, 53, 52, 4, 0, 43],
    [0, 23, 54, 63, 27, 26, 59, 23, 8, 50, 62, 42, 37, 48, 26, 60],
    [5, 14, 33, 28, 36, 24, 17, 18, 15, 47, 30, 49, 37, 34, 55, 16],
    [59, 57, 9, 62, 38, 57, 61, 30, 5, 13, 58, 64, 36, 40, 18, 61],
    [38, 48, 39, 43, 40, 9, 35, 51, 14, 40, 60, 61, 50, 2, 25, 22],
    [38, 51, 37, 66, 26, 25, 40, 6, 64, 22, 62, 16, 12, 57, 14, 9],
    [21, 15, 48, 53, 36, 20, 29, 25, 18, 18, 2, 0, 62, 64, 36, 63],
]

# responder-side pullback of HYPERPLANE: bidegree (3,3), grid row = x1-exp,
# column = x3-exp
RESPONDER_PULLBACK = [
    [12, 26, 29, -26],
    [2, 29, 0, 12],
    [13, -19, -30, -22],
    [-7, 16, 9, -24],
]

# its bidegree-(2,2) component
SHARED_COMPONENT_RESPONDER = [
    [-1, 28, -4],
    [6, -12, -24],
    [1, 30, -9],
]

# initiator-side pullback of the (unprinted, regenerated) responder
# hyperplane, as originally printed
INITIATOR_PULLBACK = [
    [0, 0, -29, -27],
    [-32, -7, 19, -5],
    [-15, -16, -11, -7],
    [24, 0, -16, 26],
]

# its bidegree-(2,2) component
SHARED_COMPONENT_INITIATOR = [
    [0, 0, 32],
    [33, -23, 0],
    [1, -2, -19],
]
