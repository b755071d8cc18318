def register(subparsers, parents):
    parser = subparsers.add_parser("arity5", parents=parents,
                                   help="E5 nullspace, its LLL-reduced lattice basis, TT and the S5 character")
    parser.set_defaults(command="arity5", handler=handle)


def handle(args) -> dict:
    return {}
