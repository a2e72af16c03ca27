"""Named fixture systems shared by the acceptance checks.

Each entry is ``(ring text, system text)``.

``FEYNMAN`` holds the integration-by-parts identities of the one-loop
propagator family ``f[k,n] = int d^d l / (D1^k D2^n)`` with a massive line
``D1 = l^2 - m2`` and a massless line ``D2 = (l+q)^2``, ``q^2 = q2``.
Taking ``d/dl_mu`` of ``v^mu / (D1^k D2^n)`` for ``v = l`` and ``v = l+q``
and rewriting ``2 l.l = 2(D1 + m2)`` and ``2 l.(l+q) = D1 + D2 + m2 - q2``
gives the two relations below.
"""

LAPLACE = (
    "x,y; u,ux,uy",
    "ux[x,y] - u[x+1,y] + u[x,y];"
    "uy[x,y] - u[x,y+1] + u[x,y];"
    "ux[x+1,y] - ux[x,y] + uy[x,y+1] - uy[x,y]",
)
FIVE_POINT = "u[x+2,y] + u[x,y+2] - 2*u[x+1,y] - 2*u[x,y+1] + 2*u[x,y]"

COMPATIBILITY = ("x,y; u", "u[x+1,y] - u[x,y]; u[x,y+1] - u[x,y]")
COMPATIBILITY_CONDITION = "r1[x,y+1] - r1[x,y] - r2[x+1,y] + r2[x,y]"

FIBONACCI = ("n; f", "f[n+2] - f[n+1] - f[n]")
INDEX_RECURRENCE = ("n; f", "f[n+1] - 1/(n+1)*f[n]")

FEYNMAN = (
    "k,n; f; d,m2,q2",
    "(d-2*k-n)*f[k,n] - 2*k*m2*f[k+1,n] - n*f[k-1,n+1] - n*(m2-q2)*f[k,n+1];"
    "(d-k-2*n)*f[k,n] - k*f[k+1,n-1] - k*(m2-q2)*f[k+1,n]",
)

ALL = {
    "laplace": LAPLACE,
    "compatibility": COMPATIBILITY,
    "fibonacci": FIBONACCI,
    "index_recurrence": INDEX_RECURRENCE,
    "feynman": FEYNMAN,
}
