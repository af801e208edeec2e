"""Warehouse container: inventory, customer orders, suppliers, shipping."""

from __future__ import annotations

from ..platform import ActionError
from .runtime import (
    ContainerBuilder,
    SimContainer,
    lookup_by_fragment,
    p_array,
    p_boolean,
    p_integer,
    p_number,
    p_object,
    p_string,
)

CONTAINER_ID = "warehouse"

ORDER_STATUSES = ("open", "packed", "shipped", "cancelled")
SHIPMENT_STATUSES = ("preparing", "in_transit", "delivered")

SEED = {
    "items": {
        "item-steel-bolt": {"name": "Steel Bolt M8", "quantity": 500, "unit_price": 0.12, "reorder_point": 100},
        "item-copper-wire": {"name": "Copper Wire Spool", "quantity": 40, "unit_price": 25.0, "reorder_point": 10},
        "item-copper-pipe": {"name": "Copper Pipe 22mm", "quantity": 8, "unit_price": 9.5, "reorder_point": 12},
        "item-alu-sheet": {"name": "Aluminium Sheet 2mm", "quantity": 75, "unit_price": 18.0, "reorder_point": 20},
        "item-wood-panel": {"name": "Oak Wood Panel", "quantity": 14, "unit_price": 32.0, "reorder_point": 15},
        "item-glass-pane": {"name": "Tempered Glass Pane", "quantity": 22, "unit_price": 45.0, "reorder_point": 5},
        "item-led-strip": {"name": "LED Strip 5m", "quantity": 120, "unit_price": 11.0, "reorder_point": 30},
        "item-server-rack": {"name": "Server Rack 42U", "quantity": 3, "unit_price": 899.0, "reorder_point": 2},
    },
    "orders": {
        "ord-1001": {"customer": "ACME Corp", "lines": [{"item_id": "item-steel-bolt", "quantity": 200}], "status": "open"},
        "ord-1002": {"customer": "Globex", "lines": [{"item_id": "item-copper-wire", "quantity": 5}, {"item_id": "item-led-strip", "quantity": 10}], "status": "packed"},
        "ord-1003": {"customer": "Initech", "lines": [{"item_id": "item-glass-pane", "quantity": 2}], "status": "shipped"},
    },
    "suppliers": {
        "sup-norda": {"name": "Norda Metals", "contact_email": "sales@norda.example", "items": ["item-steel-bolt", "item-alu-sheet"]},
        "sup-velotec": {"name": "Velotec Components", "contact_email": "orders@velotec.example", "items": ["item-led-strip", "item-copper-wire"]},
    },
    "shipments": {
        "shp-1": {"order_id": "ord-1003", "carrier": "DHL", "status": "in_transit"},
    },
    "next_ids": {"order": 1004, "shipment": 2, "supplier": 1},
}


def _item(state, item_id):
    item = state["items"].get(item_id)
    if item is None:
        raise ActionError(f"unknown item {item_id!r}")
    return item


def _order(state, order_id):
    order = state["orders"].get(order_id)
    if order is None:
        raise ActionError(f"order {order_id!r} not found")
    return order


def build() -> ContainerBuilder:
    c = ContainerBuilder(CONTAINER_ID)
    c.seed(SEED)

    inventory = c.agent("inventory", "Stock levels and item lookups for the warehouse.")

    @inventory.action("list_items", "Every item with id, name, and quantity on hand.")
    def list_items(state, args):
        return [
            {"item_id": iid, "name": i["name"], "quantity": i["quantity"]}
            for iid, i in state["items"].items()
        ]

    @inventory.action(
        "find_item_id",
        "Resolve an item name fragment (case-insensitive) to the single matching item id.",
        {"name_fragment": p_string()},
        result=p_string(),
    )
    def find_item_id(state, args):
        names = {iid: i["name"] for iid, i in state["items"].items()}
        return lookup_by_fragment(names, args["name_fragment"], "item")

    @inventory.action("get_item", "Full record for one item.", {"item_id": p_string()})
    def get_item(state, args):
        return {"item_id": args["item_id"], **_item(state, args["item_id"])}

    @inventory.action(
        "get_stock_level", "Units on hand for an item.", {"item_id": p_string()}, result=p_integer()
    )
    def get_stock_level(state, args):
        return _item(state, args["item_id"])["quantity"]

    @inventory.action(
        "add_stock",
        "Receive stock for an item; returns the new quantity.",
        {"item_id": p_string(), "quantity": p_integer("units to add, > 0")},
        result=p_integer(),
    )
    def add_stock(state, args):
        if args["quantity"] <= 0:
            raise ActionError("quantity must be positive")
        item = _item(state, args["item_id"])
        item["quantity"] += args["quantity"]
        return item["quantity"]

    @inventory.action(
        "remove_stock",
        "Issue stock for an item; never lets the level go negative.",
        {"item_id": p_string(), "quantity": p_integer("units to remove, > 0")},
        result=p_integer(),
    )
    def remove_stock(state, args):
        if args["quantity"] <= 0:
            raise ActionError("quantity must be positive")
        item = _item(state, args["item_id"])
        if item["quantity"] < args["quantity"]:
            raise ActionError(
                f"only {item['quantity']} units of {args['item_id']} on hand, cannot remove {args['quantity']}"
            )
        item["quantity"] -= args["quantity"]
        return item["quantity"]

    @inventory.action(
        "low_stock_items",
        "Ids of items whose stock is strictly below the threshold.",
        {"threshold": p_integer()},
    )
    def low_stock_items(state, args):
        return [iid for iid, i in state["items"].items() if i["quantity"] < args["threshold"]]

    @inventory.action(
        "total_inventory_value", "Sum of quantity times unit price over all items.", result=p_number()
    )
    def total_inventory_value(state, args):
        return sum(i["quantity"] * i["unit_price"] for i in state["items"].values())

    orders = c.agent("orders", "Creates and manages customer orders.")

    @orders.action("list_orders", "All orders with customer, lines, and status.")
    def list_orders(state, args):
        return [{"order_id": oid, **o} for oid, o in state["orders"].items()]

    @orders.action("get_order", "One order by id.", {"order_id": p_string()})
    def get_order(state, args):
        return {"order_id": args["order_id"], **_order(state, args["order_id"])}

    @orders.action(
        "create_order",
        "Create a customer order from line items; returns the new order id.",
        {
            "customer": p_string("customer display name"),
            "lines": p_array(
                p_object({"item_id": p_string(), "quantity": p_integer("units, > 0")}),
                description="order lines",
            ),
        },
        result=p_string(),
    )
    def create_order(state, args):
        if not args["lines"]:
            raise ActionError("an order needs at least one line")
        for line in args["lines"]:
            _item(state, line["item_id"])
            if line["quantity"] <= 0:
                raise ActionError("line quantities must be positive")
        number = state["next_ids"]["order"]
        state["next_ids"]["order"] = number + 1
        order_id = f"ord-{number}"
        state["orders"][order_id] = {
            "customer": args["customer"],
            "lines": [dict(line) for line in args["lines"]],
            "status": "open",
        }
        return order_id

    @orders.action(
        "cancel_order",
        "Remove an order entirely; refused once a shipment exists.",
        {"order_id": p_string()},
        result=p_boolean(),
    )
    def cancel_order(state, args):
        _order(state, args["order_id"])
        if any(s["order_id"] == args["order_id"] for s in state["shipments"].values()):
            raise ActionError(f"order {args['order_id']} already has a shipment")
        del state["orders"][args["order_id"]]
        return True

    @orders.action(
        "order_status", "Current status of an order.", {"order_id": p_string()}, result=p_string()
    )
    def order_status(state, args):
        return _order(state, args["order_id"])["status"]

    @orders.action(
        "set_order_status",
        f"Move an order to one of: {', '.join(ORDER_STATUSES)}.",
        {"order_id": p_string(), "status": p_string()},
        result=p_string(),
    )
    def set_order_status(state, args):
        if args["status"] not in ORDER_STATUSES:
            raise ActionError(f"status must be one of {', '.join(ORDER_STATUSES)}")
        order = _order(state, args["order_id"])
        order["status"] = args["status"]
        return order["status"]

    @orders.action(
        "find_order_id",
        "Resolve a customer name fragment to the single matching order id.",
        {"customer_fragment": p_string()},
        result=p_string(),
    )
    def find_order_id(state, args):
        customers = {oid: o["customer"] for oid, o in state["orders"].items()}
        return lookup_by_fragment(customers, args["customer_fragment"], "order")

    @orders.action("orders_for_customer", "All orders placed by a customer.", {"customer": p_string()})
    def orders_for_customer(state, args):
        return [
            {"order_id": oid, **o}
            for oid, o in state["orders"].items()
            if o["customer"].lower() == args["customer"].lower()
        ]

    suppliers = c.agent("suppliers", "Supplier directory and sourcing lookups.")

    @suppliers.action("list_suppliers", "All suppliers with their ids.")
    def list_suppliers(state, args):
        return [{"supplier_id": sid, **s} for sid, s in state["suppliers"].items()]

    @suppliers.action(
        "find_supplier_id",
        "Resolve a supplier name fragment to the single matching supplier id.",
        {"name_fragment": p_string()},
        result=p_string(),
    )
    def find_supplier_id(state, args):
        names = {sid: s["name"] for sid, s in state["suppliers"].items()}
        return lookup_by_fragment(names, args["name_fragment"], "supplier")

    @suppliers.action("get_supplier", "One supplier by id.", {"supplier_id": p_string()})
    def get_supplier(state, args):
        supplier = state["suppliers"].get(args["supplier_id"])
        if supplier is None:
            raise ActionError(f"supplier {args['supplier_id']!r} not found")
        return {"supplier_id": args["supplier_id"], **supplier}

    @suppliers.action(
        "register_supplier",
        "Add a supplier record; returns the new supplier id.",
        {
            "supplier": p_object(
                {
                    "name": p_string(),
                    "contact_email": p_string(),
                    "items": p_array(p_string("item id"), required=False),
                },
                description="supplier record",
            )
        },
        result=p_string(),
    )
    def register_supplier(state, args):
        record = args["supplier"]
        for item_id in record.get("items", []):
            _item(state, item_id)
        number = state["next_ids"]["supplier"]
        state["next_ids"]["supplier"] = number + 1
        supplier_id = f"sup-{number}"
        state["suppliers"][supplier_id] = {
            "name": record["name"],
            "contact_email": record["contact_email"],
            "items": list(record.get("items", [])),
        }
        return supplier_id

    @suppliers.action(
        "preferred_supplier_for",
        "Supplier id that lists the item; error when nobody supplies it.",
        {"item_id": p_string()},
        result=p_string(),
    )
    def preferred_supplier_for(state, args):
        _item(state, args["item_id"])
        for sid, supplier in state["suppliers"].items():
            if args["item_id"] in supplier["items"]:
                return sid
        raise ActionError(f"no supplier listed for {args['item_id']}")

    @suppliers.action(
        "remove_supplier", "Delete a supplier record.", {"supplier_id": p_string()}
    )
    def remove_supplier(state, args):
        if args["supplier_id"] not in state["suppliers"]:
            raise ActionError(f"supplier {args['supplier_id']!r} not found")
        del state["suppliers"][args["supplier_id"]]
        return True

    shipping = c.agent("shipping", "Creates shipments for orders and tracks them.")

    @shipping.action("list_shipments", "All shipments with their ids.")
    def list_shipments(state, args):
        return [{"shipment_id": sid, **s} for sid, s in state["shipments"].items()]

    @shipping.action(
        "create_shipment",
        "Create a shipment for an order; marks the order shipped.",
        {"order_id": p_string(), "carrier": p_string("e.g. DHL, UPS")},
        result=p_string(),
    )
    def create_shipment(state, args):
        order = _order(state, args["order_id"])
        number = state["next_ids"]["shipment"]
        state["next_ids"]["shipment"] = number + 1
        shipment_id = f"shp-{number}"
        state["shipments"][shipment_id] = {
            "order_id": args["order_id"], "carrier": args["carrier"], "status": "preparing"
        }
        order["status"] = "shipped"
        return shipment_id

    @shipping.action("get_shipment", "One shipment by id.", {"shipment_id": p_string()})
    def get_shipment(state, args):
        shipment = state["shipments"].get(args["shipment_id"])
        if shipment is None:
            raise ActionError(f"shipment {args['shipment_id']!r} not found")
        return {"shipment_id": args["shipment_id"], **shipment}

    @shipping.action(
        "update_shipment_status",
        f"Move a shipment to one of: {', '.join(SHIPMENT_STATUSES)}.",
        {"shipment_id": p_string(), "status": p_string()},
        result=p_string(),
    )
    def update_shipment_status(state, args):
        if args["status"] not in SHIPMENT_STATUSES:
            raise ActionError(f"status must be one of {', '.join(SHIPMENT_STATUSES)}")
        shipment = state["shipments"].get(args["shipment_id"])
        if shipment is None:
            raise ActionError(f"shipment {args['shipment_id']!r} not found")
        shipment["status"] = args["status"]
        return shipment["status"]

    @shipping.action(
        "find_shipment_id",
        "Resolve a carrier name fragment to the single matching shipment id.",
        {"carrier_fragment": p_string()},
        result=p_string(),
    )
    def find_shipment_id(state, args):
        carriers = {sid: s["carrier"] for sid, s in state["shipments"].items()}
        return lookup_by_fragment(carriers, args["carrier_fragment"], "shipment")

    @shipping.action("pending_shipments", "Ids of shipments not yet delivered.")
    def pending_shipments(state, args):
        return [sid for sid, s in state["shipments"].items() if s["status"] != "delivered"]

    analytics = c.agent("stock-analytics", "Derived numbers over inventory and orders.")

    @analytics.action("items_below_reorder_point", "Ids of items that need reordering.")
    def items_below_reorder_point(state, args):
        return [iid for iid, i in state["items"].items() if i["quantity"] < i["reorder_point"]]

    @analytics.action(
        "reorder_suggestions",
        "Suggested reorder quantity (to reach twice the reorder point) per low item.",
    )
    def reorder_suggestions(state, args):
        return {
            iid: i["reorder_point"] * 2 - i["quantity"]
            for iid, i in state["items"].items()
            if i["quantity"] < i["reorder_point"]
        }

    @analytics.action(
        "busiest_customer", "Customer with the most orders (alphabetical tiebreak).", result=p_string()
    )
    def busiest_customer(state, args):
        counts: dict[str, int] = {}
        for order in state["orders"].values():
            counts[order["customer"]] = counts.get(order["customer"], 0) + 1
        if not counts:
            raise ActionError("no orders on file")
        return min(counts, key=lambda name: (-counts[name], name))

    @analytics.action(
        "order_count_by_status", "How many orders currently hold the status.", {"status": p_string()}, result=p_integer()
    )
    def order_count_by_status(state, args):
        if args["status"] not in ORDER_STATUSES:
            raise ActionError(f"status must be one of {', '.join(ORDER_STATUSES)}")
        return sum(1 for o in state["orders"].values() if o["status"] == args["status"])

    @analytics.action("inventory_snapshot", "Quantity on hand keyed by item id.")
    def inventory_snapshot(state, args):
        return {iid: i["quantity"] for iid, i in state["items"].items()}

    @analytics.action(
        "item_turnover", "Total units of an item across all orders.", {"item_id": p_string()}, result=p_integer()
    )
    def item_turnover(state, args):
        _item(state, args["item_id"])
        return sum(
            line["quantity"]
            for order in state["orders"].values()
            for line in order["lines"]
            if line["item_id"] == args["item_id"]
        )

    return c


def build_container(latency_enabled: bool = False) -> SimContainer:
    return build().build(latency_enabled)
