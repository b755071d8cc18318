def register(subparsers, parents):
    parser = subparsers.add_parser("arity7", parents=parents,
                                   help="consequences of TT, E7 nullspace, the new generator and per-partition ranks")
    parser.set_defaults(command="arity7", handler=handle)

    new_relation = subparsers.add_parser("verify-figure2", aliases=["verify-new-relation"], parents=parents,
                                         help="integer expansion of the 60-term relation and its rank over Con(7)")
    new_relation.set_defaults(command="verify-figure2", handler=handle)


def handle(args) -> dict:
    return {}
