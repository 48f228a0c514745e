# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled traversal kernels; the contract mirrors ``mdtds._kernel_py``.

Integer scans take a C fast path when every intermediate value provably fits
in 64 bits (checked exactly against the worst-case growth before starting);
the fast path releases the GIL, so subtree jobs scale across threads.
Per-depth accumulators are 64-bit with spillover into Python integers, so
results are exact regardless of magnitude.  Anything that cannot be bounded
falls back to arbitrary-precision Python objects inside the same traversal,
which keeps outputs identical between paths.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"

ctypedef long long i64

# values are capped at 2^61 so one accumulator add can never overflow
cdef i64 _VALUE_LIMIT = (<i64>1) << 61
cdef i64 _FLUSH_LIMIT = (<i64>1) << 62

_PY_VALUE_LIMIT = 1 << 61


cdef struct _Stack:
    int* depth
    i64* value
    int* blocked


cdef int _alloc(_Stack* stack, i64** acc, int capacity, int n_max) except -1:
    stack.depth = <int*> malloc(capacity * sizeof(int))
    stack.value = <i64*> malloc(capacity * sizeof(i64))
    stack.blocked = <int*> malloc(capacity * sizeof(int))
    acc[0] = <i64*> malloc((n_max + 1) * sizeof(i64))
    if (stack.depth == NULL or stack.value == NULL or stack.blocked == NULL
            or acc[0] == NULL):
        _release(stack, acc[0])
        raise MemoryError()
    return 0


cdef void _release(_Stack* stack, i64* acc) noexcept:
    free(stack.depth)
    free(stack.value)
    free(stack.blocked)
    free(acc)


def _mult_fits(mults, x0, int n_max):
    """Exact worst-case bound: |x0| * max|mult|^n_max within the value cap."""
    if not isinstance(x0, int) or not all(isinstance(m, int) for m in mults):
        return False
    peak = max(1, max(abs(m) for m in mults))
    return abs(x0) * peak ** n_max <= _PY_VALUE_LIMIT


def subtree_scan_mult(int n_gens, int n_max, mults, x0, int root_letter):
    """Per-depth sums with multiplicative steps; see the pure-Python twin."""
    sums = [0] * (n_max + 1)
    if n_max < 1:
        return sums
    if _mult_fits(mults, x0, n_max):
        _scan_mult_c(2 * n_gens, n_max, mults, x0, root_letter, sums)
        return sums
    return _scan_mult_obj(2 * n_gens, n_max, list(mults), x0, root_letter, sums)


cdef int _scan_mult_c(int q, int n_max, mults, x0, int root_letter,
                      list py_sums) except -1:
    cdef _Stack stack
    cdef i64* acc = NULL
    cdef i64* cmults = <i64*> malloc(q * sizeof(i64))
    cdef int capacity = q * (n_max + 1) + 2
    cdef int top = 0, d = 0, b = 0, li = 0
    cdef i64 v = 0
    if cmults == NULL:
        raise MemoryError()
    try:
        _alloc(&stack, &acc, capacity, n_max)
    except BaseException:
        free(cmults)
        raise
    try:
        for li in range(q):
            cmults[li] = mults[li]
        for d in range(n_max + 1):
            acc[d] = 0
        stack.depth[0] = 1
        stack.value[0] = (<i64> x0) * cmults[root_letter]
        stack.blocked[0] = root_letter ^ 1
        top = 1
        with nogil:
            while top:
                top -= 1
                d = stack.depth[top]
                v = stack.value[top]
                b = stack.blocked[top]
                acc[d] += v
                if acc[d] > _FLUSH_LIMIT or acc[d] < -_FLUSH_LIMIT:
                    with gil:
                        py_sums[d] = py_sums[d] + acc[d]
                    acc[d] = 0
                if d < n_max:
                    for li in range(q - 1, -1, -1):
                        if li != b:
                            stack.depth[top] = d + 1
                            stack.value[top] = v * cmults[li]
                            stack.blocked[top] = li ^ 1
                            top += 1
        for d in range(1, n_max + 1):
            py_sums[d] = py_sums[d] + acc[d]
    finally:
        _release(&stack, acc)
        free(cmults)
    return 0


cdef _scan_mult_obj(int q, int n_max, list mults, x0, int root_letter,
                    list sums):
    cdef int d, b, li
    stack = [(1, x0 * mults[root_letter], root_letter ^ 1)]
    while stack:
        d, value, b = stack.pop()
        sums[d] = sums[d] + value
        if d < n_max:
            for li in range(q - 1, -1, -1):
                if li != b:
                    stack.append((d + 1, value * mults[li], li ^ 1))
    return sums


def subtree_scan_addmod(int n_gens, int n_max, steps, modulus, x0,
                        int root_letter):
    """Per-depth sums with additive steps mod ``modulus``."""
    sums = [0] * (n_max + 1)
    if n_max < 1:
        return sums
    # the C path needs everything in [0, modulus): C % is not Python % on
    # negative operands, and the twins must agree bit for bit
    if (isinstance(modulus, int) and modulus <= _PY_VALUE_LIMIT
            and isinstance(x0, int) and 0 <= x0 < modulus
            and all(isinstance(s, int) and 0 <= s < modulus for s in steps)):
        _scan_addmod_c(2 * n_gens, n_max, steps, modulus, x0, root_letter, sums)
        return sums
    return _scan_addmod_obj(2 * n_gens, n_max, list(steps), modulus, x0,
                            root_letter, sums)


cdef int _scan_addmod_c(int q, int n_max, steps, modulus, x0, int root_letter,
                        list py_sums) except -1:
    cdef _Stack stack
    cdef i64* acc = NULL
    cdef i64* csteps = <i64*> malloc(q * sizeof(i64))
    cdef int capacity = q * (n_max + 1) + 2
    cdef int top = 0, d = 0, b = 0, li = 0
    cdef i64 v = 0, nv = 0, cmod = modulus
    if csteps == NULL:
        raise MemoryError()
    try:
        _alloc(&stack, &acc, capacity, n_max)
    except BaseException:
        free(csteps)
        raise
    try:
        for li in range(q):
            csteps[li] = steps[li]
        for d in range(n_max + 1):
            acc[d] = 0
        stack.depth[0] = 1
        stack.value[0] = ((<i64> x0) + csteps[root_letter]) % cmod
        stack.blocked[0] = root_letter ^ 1
        top = 1
        with nogil:
            while top:
                top -= 1
                d = stack.depth[top]
                v = stack.value[top]
                b = stack.blocked[top]
                acc[d] += v
                if acc[d] > _FLUSH_LIMIT:
                    with gil:
                        py_sums[d] = py_sums[d] + acc[d]
                    acc[d] = 0
                if d < n_max:
                    for li in range(q - 1, -1, -1):
                        if li != b:
                            nv = v + csteps[li]
                            if nv >= cmod:
                                nv -= cmod
                            stack.depth[top] = d + 1
                            stack.value[top] = nv
                            stack.blocked[top] = li ^ 1
                            top += 1
        for d in range(1, n_max + 1):
            py_sums[d] = py_sums[d] + acc[d]
    finally:
        _release(&stack, acc)
        free(csteps)
    return 0


cdef _scan_addmod_obj(int q, int n_max, list steps, modulus, x0,
                      int root_letter, list sums):
    cdef int d, b, li
    stack = [(1, (x0 + steps[root_letter]) % modulus, root_letter ^ 1)]
    while stack:
        d, value, b = stack.pop()
        sums[d] = sums[d] + value
        if d < n_max:
            for li in range(q - 1, -1, -1):
                if li != b:
                    stack.append((d + 1, (value + steps[li]) % modulus, li ^ 1))
    return sums


def subtree_scan_object(int n_gens, int n_max, step, x0, int root_letter):
    """Per-depth sums with an opaque step callable, depth-first preorder."""
    cdef int q = 2 * n_gens
    cdef int d, b, li
    sums = [None] * (n_max + 1)
    if n_max < 1:
        return sums
    stack = [(1, step(x0, root_letter), root_letter ^ 1)]
    while stack:
        d, value, b = stack.pop()
        acc = sums[d]
        sums[d] = value if acc is None else acc + value
        if d < n_max:
            for li in range(q - 1, -1, -1):
                if li != b:
                    stack.append((d + 1, step(value, li), li ^ 1))
    return sums
